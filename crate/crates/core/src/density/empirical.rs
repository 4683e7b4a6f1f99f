use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{enumerate_region, RegionBox};
use crate::nf_core::AlgebraicInt;

use super::DensityParams;

/// True if `alpha` is counted: `f(alpha)` is nonzero, outside every excluded
/// prime and m-free.
pub fn is_counted(p: &DensityParams, alpha: &[i128]) -> Result<bool> {
    let k = p.field;
    let v = p.poly.eval(k, alpha);
    if k.is_zero(&v) {
        return Ok(false);
    }
    if p.excluded.iter().any(|pr| pr.contains(&v)) {
        return Ok(false);
    }
    k.is_mfree_element(&v, p.m)
}

/// Elements of the order in the box that pass the sieve, in enumeration order.
pub fn counted_elements(p: &DensityParams, bx: &RegionBox) -> Result<Vec<AlgebraicInt>> {
    let k = p.field;
    let pts = enumerate_region(k, &k.zero(), p.order.basis(), bx)?;
    let keep: Vec<bool> = pts
        .par_iter()
        .map(|a| is_counted(p, a))
        .collect::<Result<_>>()?;
    Ok(pts
        .into_iter()
        .zip(keep)
        .filter_map(|(a, k)| k.then_some(a))
        .collect())
}

/// `N(x)` for the box.
pub fn empirical_count(p: &DensityParams, bx: &RegionBox) -> Result<u64> {
    let k = p.field;
    let pts = enumerate_region(k, &k.zero(), p.order.basis(), bx)?;
    let hits: Vec<u64> = pts
        .par_iter()
        .map(|a| is_counted(p, a).map(u64::from))
        .collect::<Result<_>>()?;
    Ok(hits.iter().sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalRow {
    pub x: f64,
    pub count: u64,
    pub ratio: f64,
    /// `|N(x)/x - D| / D` against the interval midpoint.
    pub relative_error: f64,
}

/// Counts over uniform boxes `x_i = x^(1/n)` for each volume parameter.
pub fn empirical_rows(p: &DensityParams, xs: &[f64], d_mid: f64) -> Result<Vec<EmpiricalRow>> {
    xs.iter()
        .map(|&x| {
            let bx = RegionBox::uniform(x, p.field.signature())?;
            let count = empirical_count(p, &bx)?;
            let ratio = count as f64 / bx.x();
            Ok(EmpiricalRow {
                x: bx.x(),
                count,
                ratio,
                relative_error: (ratio - d_mid).abs() / d_mid,
            })
        })
        .collect()
}
