//! Report records and their canonical TSV and JSON forms.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::interval::{decimal_ceil, decimal_floor, rat_string, RatInterval};
use crate::builder::{BelcherRow, Tower, UnitGenerationReport};
use crate::density::{
    DensityParams, EmpiricalRow, EulerDensity, ExponentData, FixedDivisor, GapReport,
};
use crate::geometry::CosetCount;
use crate::nf_core::NumberField;

use super::Format;

const DIGITS: u32 = 15;

/// A report with a tab-separated form; the JSON form comes from `Serialize`.
pub trait Emit {
    fn tsv(&self) -> String;
}

/// Canonical bytes of a report. Identical inputs give identical bytes.
pub fn emit_report<R: Emit + Serialize>(r: &R, format: Format) -> Vec<u8> {
    match format {
        Format::Tsv => r.tsv().into_bytes(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
    }
}

fn meta(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "# {key}\t{value}");
}

fn fixed(x: f64) -> String {
    format!("{x:.12}")
}

fn lo(i: &RatInterval) -> String {
    decimal_floor(&i.lo, DIGITS)
}

fn hi(i: &RatInterval) -> String {
    decimal_ceil(&i.hi, DIGITS)
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityOutput {
    pub field: String,
    pub order: String,
    pub order_index: u128,
    pub polynomial: String,
    pub m: u32,
    pub excluded: Vec<String>,
    pub truncation_norm: u128,
    pub density: RatInterval,
    pub conductor_sum: String,
    pub finite_product: String,
    pub tail_factor: String,
    pub exceptional_primes: Vec<String>,
    pub fixed_divisor: Option<FixedDivisor>,
    pub exponents: ExponentData,
    pub rows: Vec<EmpiricalRow>,
    pub gap: Option<GapReport>,
}

impl DensityOutput {
    pub(crate) fn new(
        k: &NumberField,
        order: &str,
        p: &DensityParams,
        d: EulerDensity,
        rows: Vec<EmpiricalRow>,
        exponents: ExponentData,
        gap: Option<GapReport>,
    ) -> Self {
        DensityOutput {
            field: k.name().to_string(),
            order: order.to_string(),
            order_index: d.order_index,
            polynomial: p.poly.format(k),
            m: p.m,
            excluded: p.excluded.iter().map(super::label).collect(),
            truncation_norm: d.truncation_norm,
            density: d.interval,
            conductor_sum: rat_string(&d.conductor_sum),
            finite_product: rat_string(&d.finite_product),
            tail_factor: rat_string(&d.tail_factor),
            exceptional_primes: d.exceptional_primes,
            fixed_divisor: d.fixed_divisor,
            exponents,
            rows,
            gap,
        }
    }
}

impl Emit for DensityOutput {
    fn tsv(&self) -> String {
        let mut s = String::new();
        meta(&mut s, "field", &self.field);
        meta(&mut s, "order", &self.order);
        meta(&mut s, "order_index", self.order_index);
        meta(&mut s, "polynomial", &self.polynomial);
        meta(&mut s, "m", self.m);
        meta(&mut s, "excluded", self.excluded.join(","));
        meta(&mut s, "truncation_norm", self.truncation_norm);
        meta(&mut s, "conductor_sum", &self.conductor_sum);
        meta(&mut s, "finite_product", &self.finite_product);
        meta(&mut s, "tail_factor", &self.tail_factor);
        meta(
            &mut s,
            "exceptional_primes",
            self.exceptional_primes.join(","),
        );
        if let Some(f) = &self.fixed_divisor {
            meta(
                &mut s,
                "fixed_divisor",
                format!("{} (norm {})", f.prime, f.norm),
            );
        }
        meta(&mut s, "exponents", &self.exponents);
        if let Some(g) = &self.gap {
            meta(&mut s, "gap_lhs", rat_string(&g.lhs));
            meta(&mut s, "gap_rhs", rat_string(&g.rhs));
            meta(&mut s, "gap_strict", g.strict_gap);
            meta(
                &mut s,
                "order_density",
                format!("[{}, {}]", lo(&g.order_density), hi(&g.order_density)),
            );
            meta(
                &mut s,
                "maximal_density",
                format!("[{}, {}]", lo(&g.maximal_density), hi(&g.maximal_density)),
            );
        }
        s.push_str("x\tN\tN/x\tD_lo\tD_hi\trel_err\n");
        let (dl, dh) = (lo(&self.density), hi(&self.density));
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{dl}\t{dh}\t{}",
                r.x,
                r.count,
                fixed(r.ratio),
                fixed(r.relative_error)
            );
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub x: f64,
    pub count: u64,
    pub main_term: f64,
    pub deviation: f64,
    pub error_bound: f64,
    pub index: u128,
    pub within_bound: bool,
}

impl CountRow {
    pub(crate) fn new(x: f64, c: CosetCount) -> Self {
        CountRow {
            x,
            count: c.count,
            main_term: c.main_term,
            deviation: c.deviation,
            error_bound: c.error_bound,
            index: c.index,
            within_bound: c.deviation <= c.error_bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountOutput {
    pub field: String,
    pub order: String,
    pub ideal: String,
    pub beta: String,
    pub rows: Vec<CountRow>,
}

impl Emit for CountOutput {
    fn tsv(&self) -> String {
        let mut s = String::new();
        meta(&mut s, "field", &self.field);
        meta(&mut s, "order", &self.order);
        meta(&mut s, "ideal", &self.ideal);
        meta(&mut s, "beta", &self.beta);
        s.push_str("x\tcount\tmain_term\tdeviation\terror_bound\tindex\twithin_bound\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{:e}\t{}\t{}",
                r.x,
                r.count,
                fixed(r.main_term),
                fixed(r.deviation),
                r.error_bound,
                r.index,
                r.within_bound
            );
        }
        s
    }
}

fn verification_rows(s: &mut String, v: &UnitGenerationReport) {
    s.push_str("check\tpassed\n");
    for (name, ok) in [
        ("eta_units", v.eta_units),
        ("omega_identity", v.omega_identity),
        ("reaches_maximal", v.reaches_maximal),
        ("discriminants_coprime", v.discriminants_coprime),
        ("step_count_bound", v.step_count_bound),
    ] {
        let _ = writeln!(s, "{name}\t{ok}");
    }
    for f in &v.failures {
        meta(s, "failure", f);
    }
}

fn coords(a: &[i128]) -> String {
    a.iter().map(i128::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerOutput {
    pub tower: Tower,
    pub verification: UnitGenerationReport,
}

impl Emit for TowerOutput {
    fn tsv(&self) -> String {
        let t = &self.tower;
        let mut s = String::new();
        meta(&mut s, "field", &t.base);
        meta(&mut s, "start_index", t.start_index);
        meta(&mut s, "final_index", t.final_index);
        meta(&mut s, "compositum_degree", t.compositum.degree);
        meta(&mut s, "compositum_disc", &t.compositum.disc);
        s.push_str("step\tomega\teta\tdisc_element\tdisc_norm\tdisc_hnf\tindex_after\n");
        for (i, st) in t.steps.iter().enumerate() {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                i + 1,
                coords(&st.omega),
                coords(&st.eta),
                coords(&st.disc_element),
                st.disc_element_norm,
                st.disc_ideal.canonical_string(),
                t.indices[i]
            );
        }
        s.push('\n');
        verification_rows(&mut s, &self.verification);
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutput {
    pub field: String,
    pub start_index: u128,
    pub omegas: Vec<String>,
    pub verification: UnitGenerationReport,
}

impl Emit for VerifyOutput {
    fn tsv(&self) -> String {
        let mut s = String::new();
        meta(&mut s, "field", &self.field);
        meta(&mut s, "start_index", self.start_index);
        meta(&mut s, "omegas", self.omegas.join(" ; "));
        verification_rows(&mut s, &self.verification);
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BelcherOutput {
    pub rows: Vec<BelcherRow>,
}

impl Emit for BelcherOutput {
    fn tsv(&self) -> String {
        let mut s = String::from("d\tunit_generated\n");
        for r in &self.rows {
            let _ = writeln!(s, "{}\t{}", r.d, r.unit_generated);
        }
        s
    }
}
