//! Counting points of a coset `beta + I` of an ideal that lie in a suborder
//! and in a box, against the volume prediction.

use serde::Serialize;

use crate::arith::hnf::{self, Row};
use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, IdealLattice, NumberField, SubOrder};

use super::enumerate::enumerate_region;
use super::minima::{widmer_bound, EmbeddedLattice};
use super::region::RegionBox;

#[derive(Clone, Debug, Serialize)]
pub struct CosetCount {
    pub count: u64,
    pub main_term: f64,
    pub deviation: f64,
    pub error_bound: f64,
    /// `[O_K : I ∩ O]`.
    pub index: u128,
    /// The representative of the coset inside the order.
    pub representative: AlgebraicInt,
}

/// `(2 pi)^s / sqrt|d_K|`.
pub fn volume_constant(k: &NumberField) -> f64 {
    let s = k.signature().1 as i32;
    (2.0 * std::f64::consts::PI).powi(s) / (k.disc().unsigned_abs() as f64).sqrt()
}

/// Diagonal of the rescaling that turns the box into one with all sides
/// `x^(1/n)`, in `R^n` coordinates.
pub fn rescaling(bx: &RegionBox) -> Vec<f64> {
    let (r, s) = bx.signature();
    let n = bx.dim();
    let side = bx.x().powf(1.0 / n as f64);
    let mut out = Vec::with_capacity(n);
    for i in 0..r {
        out.push(side / bx.embedding_bound(i));
    }
    for j in 0..s {
        let f = side / bx.embedding_bound(r + j);
        out.push(f);
        out.push(f);
    }
    out
}

pub fn rescaling_det(bx: &RegionBox) -> f64 {
    rescaling(bx).iter().product()
}

/// The real lattice `sigma(L)` for a sublattice `L` of `O_K` given by rows.
pub fn embed_lattice(k: &NumberField, rows: &[Row]) -> Result<EmbeddedLattice> {
    let phi = k.basis_embedding_f64()?;
    EmbeddedLattice::from_rows(
        rows.iter()
            .map(|r| {
                let v: Vec<f64> = r.iter().map(|&c| c as f64).collect();
                crate::arith::fmat::row_times(&v, &phi)
            })
            .collect(),
    )
}

/// Counts `(beta + I) ∩ O ∩ R(x)` exactly and compares it with
/// `c x / [O_K : I ∩ O]`.
pub fn count_coset(
    k: &NumberField,
    beta: &[i128],
    ideal: &IdealLattice,
    order: &SubOrder,
    bx: &RegionBox,
) -> Result<CosetCount> {
    let n = k.degree();
    let alpha = hnf::split_in_sum(order.basis(), ideal.hnf(), beta, n).ok_or(Error::EmptyCoset)?;
    let m = hnf::intersection(ideal.hnf(), order.basis(), n);
    let index = hnf::det(&m) as u128;
    let points = enumerate_region(k, &alpha, &m, bx)?;
    let main_term = volume_constant(k) * bx.x() / index as f64;
    let (r, s) = k.signature();
    let lattice = embed_lattice(k, &m)?
        .scaled(&rescaling(bx))?
        .with_minima()?;
    let lip = 2.0 * std::f64::consts::PI * bx.x().powf(1.0 / n as f64);
    let error_bound = widmer_bound(&lattice, 2 * r + s, lip)?;
    let count = points.len() as u64;
    Ok(CosetCount {
        count,
        main_term,
        deviation: (count as f64 - main_term).abs(),
        error_bound,
        index,
        representative: alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn golden_cosets() {
        let k = fields::golden();
        let ok = k.maximal_order();
        let b = RegionBox::new(vec![2.0, 2.0], k.signature()).unwrap();
        let two = k.principal_ideal(&[2, 0]).unwrap();
        let c = count_coset(&k, &k.zero(), &two, &ok, &b).unwrap();
        assert_eq!(c.count, 1);
        assert!((c.main_term - 1.0 / 5f64.sqrt()).abs() < 1e-12);
        let c = count_coset(&k, &k.zero(), &k.unit_ideal(), &ok, &b).unwrap();
        assert_eq!(c.count, 2);
        assert!((c.main_term - 4.0 / 5f64.sqrt()).abs() < 1e-12);
        assert!(c.deviation <= c.error_bound);
    }

    #[test]
    fn coset_missing_the_order() {
        let k = fields::golden();
        let o = k.named_order("Z[sqrt5]").unwrap();
        let two = k.principal_ideal(&[2, 0]).unwrap();
        // theta is not congruent mod 2 to anything in Z[sqrt5] = Z + 2 O_K
        assert!(matches!(
            count_coset(
                &k,
                &k.theta(),
                &two,
                &o,
                &RegionBox::new(vec![4.0, 4.0], (2, 0)).unwrap()
            ),
            Err(Error::EmptyCoset)
        ));
    }

    #[test]
    fn first_minimum_of_twice_the_integers() {
        let k = fields::golden();
        let two = k.principal_ideal(&[2, 0]).unwrap();
        let l = embed_lattice(&k, two.hnf()).unwrap().with_minima().unwrap();
        assert!((l.minima().unwrap()[0] - 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rescaling_is_unimodular() {
        let b = RegionBox::new(vec![3.0, 7.0, 7.0], (1, 1)).unwrap();
        assert!((rescaling_det(&b) - 1.0).abs() < 1e-12);
    }
}
