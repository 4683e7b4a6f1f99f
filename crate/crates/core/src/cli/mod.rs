//! Command-line front end. Every subcommand produces one report, written as
//! TSV or JSON with byte-stable formatting.

mod args;
mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::builder::{
    belcher_criterion, belcher_table, build_tower, verify_steps, verify_unit_generation,
    StartOrder, TowerCaps, TowerStep,
};
use crate::density::{
    density_gap_check, empirical_rows, error_exponent, euler_density, prime_label, DensityParams,
    SievePolynomial,
};
use crate::error::{Error, Result};
use crate::fields;
use crate::geometry::{count_coset, RegionBox};
use crate::nf_core::{AlgebraicInt, NumberField, SubOrder};

pub use args::{Cli, Command, Format};
pub use report::{
    emit_report, BelcherOutput, CountOutput, CountRow, DensityOutput, Emit, TowerOutput,
    VerifyOutput,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

pub const THREADS_ENV: &str = "UNITGEN_THREADS";

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis { .. }
        | Error::Precondition(_)
        | Error::NotCoprime(_)
        | Error::NoAdmissibleExponent(_) => EXIT_HYPOTHESIS,
        Error::SearchExhausted(_)
        | Error::CapExceeded { .. }
        | Error::PrecisionExhausted { .. }
        | Error::DimensionCap { .. }
        | Error::FactorizationLimit(_) => EXIT_EXHAUSTED,
        Error::InvalidField(_)
        | Error::InvalidInput(_)
        | Error::ZeroIdeal
        | Error::NonMonogenic { .. }
        | Error::EmptyCoset => EXIT_CONFIG,
    }
}

fn error_kind(code: i32) -> &'static str {
    match code {
        EXIT_HYPOTHESIS => "hypothesis",
        EXIT_EXHAUSTED => "exhausted",
        _ => "config",
    }
}

fn diagnostic(err: &mut dyn Write, code: i32, message: &str, remedy: Option<&str>) {
    let mut d = json!({ "error": error_kind(code), "exit_code": code, "message": message });
    if let Some(r) = remedy {
        d["remedy"] = json!(r);
    }
    let _ = writeln!(err, "{d}");
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let code = exit_code(e);
    let remedy = match e {
        Error::Hypothesis { remedy, .. } => Some(remedy.as_str()),
        _ => None,
    };
    diagnostic(err, code, &e.to_string(), remedy);
    code
}

/// Parses `args` (including the program name), runs the subcommand and
/// writes the report to `--output` or `out`. Diagnostics go to `err` as one
/// JSON line.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            diagnostic(err, EXIT_CONFIG, e.to_string().trim(), None);
            return EXIT_CONFIG;
        }
    };
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(e) => return report_error(err, &e),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return report_error(err, &Error::InvalidInput(e.to_string())),
    };
    let (bytes, code) = match pool.install(|| execute(&cli)) {
        Ok(r) => r,
        Err(e) => return report_error(err, &e),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| e.to_string()),
        None => out.write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        diagnostic(err, EXIT_CONFIG, &format!("cannot write report: {e}"), None);
        return EXIT_CONFIG;
    }
    if code != EXIT_OK {
        diagnostic(err, code, "verification failed; see the report", None);
    }
    code
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    let t = match flag {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| {
                Error::InvalidInput(format!("{THREADS_ENV}={s:?} is not a thread count"))
            })?),
            Err(_) => None,
        },
    };
    if t == Some(0) {
        return Err(Error::InvalidInput("thread count must be positive".into()));
    }
    Ok(t)
}

/// Report bytes and exit code for a parsed command line.
pub fn execute(cli: &Cli) -> Result<(Vec<u8>, i32)> {
    match &cli.command {
        Command::Density(a) => {
            let k = load_field(&a.field.field)?;
            let o = k.named_order(&a.field.order)?;
            let r = density(&k, &o, a)?;
            Ok((emit_report(&r, cli.format), EXIT_OK))
        }
        Command::Count(a) => {
            let k = load_field(&a.field.field)?;
            let o = k.named_order(&a.field.order)?;
            let r = count(&k, &o, a)?;
            Ok((emit_report(&r, cli.format), EXIT_OK))
        }
        Command::Tower(a) => {
            let k = load_field(&a.field)?;
            let r = tower(&k, a)?;
            Ok((emit_report(&r, cli.format), EXIT_OK))
        }
        Command::Belcher(a) => {
            let rows = match a.d {
                Some(d) => vec![crate::builder::BelcherRow {
                    d,
                    unit_generated: belcher_criterion(d)?,
                }],
                None => {
                    if a.bound < 2 {
                        return Err(Error::InvalidInput("bound must be at least 2".into()));
                    }
                    belcher_table(a.bound)
                }
            };
            Ok((emit_report(&BelcherOutput { rows }, cli.format), EXIT_OK))
        }
        Command::Verify(a) => {
            let k = load_field(&a.field)?;
            let r = verify(&k, &a.tower)?;
            let code = if r.verification.all_passed() {
                EXIT_OK
            } else {
                EXIT_HYPOTHESIS
            };
            Ok((emit_report(&r, cli.format), code))
        }
    }
}

/// A bundled name or a path to a JSON spec.
pub fn load_field(name: &str) -> Result<NumberField> {
    if let Some(k) = fields::bundled(name) {
        return Ok(k);
    }
    let text = std::fs::read_to_string(name).map_err(|e| {
        Error::InvalidField(format!("{name}: not a bundled field and unreadable ({e})"))
    })?;
    NumberField::from_json(&text)
}

/// `"1,-2"` as coordinates of length `n`.
pub fn parse_element(s: &str, n: usize) -> Result<AlgebraicInt> {
    let v = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i128>()
                .map_err(|_| Error::InvalidInput(format!("bad coordinate {t:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(Error::InvalidInput(format!("{s:?} needs {n} coordinates")));
    }
    Ok(v)
}

/// `"1,0;0,2"` as a list of elements.
pub fn parse_elements(s: &str, n: usize) -> Result<Vec<AlgebraicInt>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_element(t, n))
        .collect()
}

fn check_schedule(xs: &[f64]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite() || *x <= 0.0) {
        return Err(Error::InvalidInput(
            "box parameters must be positive".into(),
        ));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "box schedule must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn excluded_primes(k: &NumberField, ps: &[u128]) -> Result<Vec<crate::nf_core::PrimeIdealData>> {
    let mut out = Vec::new();
    for &p in ps {
        if !crate::arith::factor::is_prime(p)? {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        out.extend(k.primes_above(p)?.iter().cloned());
    }
    Ok(out)
}

fn density(k: &NumberField, o: &SubOrder, a: &args::DensityArgs) -> Result<DensityOutput> {
    check_schedule(&a.x)?;
    let n = k.degree();
    let eta = parse_element(&a.eta, n)?;
    let poly = match &a.poly {
        Some(s) => {
            let coeffs = parse_elements(s, n)?;
            if coeffs.len() > 3 {
                SievePolynomial::assume_irreducible(k, coeffs)?
            } else {
                SievePolynomial::new(k, coeffs)?
            }
        }
        None => SievePolynomial::x2_minus_4(k, &eta)?,
    };
    let excluded = excluded_primes(k, &a.exclude)?;
    let p = DensityParams::new(k, o.clone(), poly, excluded.clone(), a.m)?;
    let d = euler_density(&p, a.truncation)?;
    let mid = crate::arith::interval::to_f64(&d.interval.mid());
    let rows = empirical_rows(&p, &a.x, mid)?;
    let exponents = error_exponent(n as u32, p.poly.degree() as u32, p.m)?;
    let gap = if a.gap {
        if a.poly.is_some() {
            return Err(Error::InvalidInput(
                "--gap applies to X^2 - 4 eta only".into(),
            ));
        }
        Some(density_gap_check(k, o, &eta, &excluded, a.truncation)?)
    } else {
        None
    };
    Ok(DensityOutput::new(
        k,
        &a.field.order,
        &p,
        d,
        rows,
        exponents,
        gap,
    ))
}

fn count(k: &NumberField, o: &SubOrder, a: &args::CountArgs) -> Result<CountOutput> {
    check_schedule(&a.x)?;
    let n = k.degree();
    let ideal = match &a.ideal {
        Some(s) => k.ideal_from_generators(&parse_elements(s, n)?)?,
        None => k.unit_ideal(),
    };
    let beta = match &a.beta {
        Some(s) => parse_element(s, n)?,
        None => k.zero(),
    };
    let mut rows = Vec::with_capacity(a.x.len());
    for &x in &a.x {
        let bx = RegionBox::uniform(x, k.signature())?;
        let c = count_coset(k, &beta, &ideal, o, &bx)?;
        rows.push(CountRow::new(x, c));
    }
    Ok(CountOutput {
        field: k.name().to_string(),
        order: a.field.order.clone(),
        ideal: ideal.canonical_string(),
        beta: k.format_element(&beta),
        rows,
    })
}

fn tower(k: &NumberField, a: &args::TowerArgs) -> Result<TowerOutput> {
    let n = k.degree();
    let units = match &a.units {
        Some(s) => parse_elements(s, n)?,
        None => k.units().to_vec(),
    };
    let start = match &a.order {
        Some(name) => StartOrder::Order(k.named_order(name)?),
        None => StartOrder::Units(units.clone()),
    };
    let eta = match (&a.eta, units.first()) {
        (Some(s), _) => parse_element(s, n)?,
        (None, Some(u)) => u.clone(),
        (None, None) => return Err(Error::InvalidInput("no unit given for eta".into())),
    };
    let caps = TowerCaps {
        search_bound: a.search_bound,
        max_steps: a.max_steps,
    };
    let t = build_tower(k, &start, &eta, caps)?;
    let verification = verify_unit_generation(k, &t)?;
    Ok(TowerOutput {
        tower: t,
        verification,
    })
}

fn verify(k: &NumberField, path: &std::path::Path) -> Result<VerifyOutput> {
    let bad = |m: &str| Error::InvalidInput(format!("{}: {m}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| bad(&e.to_string()))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    let t = v.get("tower").unwrap_or(&v);
    let rows: Vec<Vec<i128>> = serde_json::from_value(t["start_order"]["basis"].clone())
        .map_err(|_| bad("missing start_order.basis"))?;
    let start = k.order_from_rows(&rows)?;
    let raw = t["steps"].as_array().ok_or_else(|| bad("missing steps"))?;
    let mut steps = Vec::with_capacity(raw.len());
    for s in raw {
        let omega: AlgebraicInt =
            serde_json::from_value(s["omega"].clone()).map_err(|_| bad("step without omega"))?;
        let eta: AlgebraicInt =
            serde_json::from_value(s["eta"].clone()).map_err(|_| bad("step without eta"))?;
        if omega.len() != k.degree() || eta.len() != k.degree() {
            return Err(bad("coordinates of the wrong length"));
        }
        steps.push(TowerStep::unchecked(k, &omega, &eta)?);
    }
    let verification = verify_steps(k, &start, &steps)?;
    Ok(VerifyOutput {
        field: k.name().to_string(),
        start_index: start.index(),
        omegas: steps.iter().map(|s| k.format_element(&s.omega)).collect(),
        verification,
    })
}

pub(crate) fn label(pr: &crate::nf_core::PrimeIdealData) -> String {
    prime_label(pr)
}
