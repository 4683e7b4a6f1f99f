//! Exhaustive enumeration of lattice cosets inside a region box.

use rayon::prelude::*;

use crate::arith::fmat;
use crate::arith::hnf::{self, Row};
use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, NumberField};

use super::region::{in_region, RegionBox};

/// Candidates above this count are refused rather than scanned.
pub const ENUMERATION_CAP: u128 = 2_000_000_000;

/// Per-coordinate integer ranges covering every `y` with
/// `beta + y L` inside the box.
fn coordinate_box(
    k: &NumberField,
    beta: &[i128],
    lattice: &[Row],
    bx: &RegionBox,
) -> Result<Vec<(i128, i128)>> {
    let n = k.degree();
    let phi = k.basis_embedding_f64()?;
    let lphi: Vec<Vec<f64>> = lattice
        .iter()
        .map(|row| {
            let v: Vec<f64> = row.iter().map(|&c| c as f64).collect();
            fmat::row_times(&v, &phi)
        })
        .collect();
    let inv = fmat::invert(&lphi).ok_or_else(|| Error::InvalidInput("singular lattice".into()))?;
    let bf: Vec<f64> = beta.iter().map(|&c| c as f64).collect();
    let pb = fmat::row_times(&bf, &phi);
    let ranges = bx.coordinate_ranges();
    let mut out = Vec::with_capacity(n);
    for kk in 0..n {
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for i in 0..n {
            let g = inv[i][kk];
            let a = (ranges[i].0 - pb[i]) * g;
            let b = (ranges[i].1 - pb[i]) * g;
            lo += a.min(b);
            hi += a.max(b);
        }
        let slack = 1e-7 * (hi - lo).abs() + 1e-7 * (lo.abs() + hi.abs()) + 1.0;
        out.push(((lo - slack).floor() as i128, (hi + slack).ceil() as i128));
    }
    Ok(out)
}

/// Every point of `beta + L` in `R(x)`, sorted lexicographically by
/// coordinates. `L` is given by a full-rank HNF inside `O_K`.
pub fn enumerate_region(
    k: &NumberField,
    beta: &[i128],
    lattice: &[Row],
    bx: &RegionBox,
) -> Result<Vec<AlgebraicInt>> {
    let n = k.degree();
    if !hnf::is_full_rank(lattice, n) {
        return Err(Error::InvalidInput("lattice must have full rank".into()));
    }
    let cb = coordinate_box(k, beta, lattice, bx)?;
    let total: u128 = cb.iter().map(|(a, b)| (b - a + 1) as u128).product();
    if total > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            size: total,
            cap: ENUMERATION_CAP,
        });
    }
    let (lo0, hi0) = cb[0];
    let chunks: Vec<Result<Vec<AlgebraicInt>>> = (lo0..=hi0)
        .into_par_iter()
        .map(|y0| {
            let mut found = Vec::new();
            let mut y: Vec<i128> = cb.iter().map(|r| r.0).collect();
            y[0] = y0;
            loop {
                let p = k.add(beta, &hnf::combine(lattice, &y));
                if in_region(k, &p, bx)? {
                    found.push(p);
                }
                let mut j = 1;
                loop {
                    if j >= n {
                        return Ok(found);
                    }
                    y[j] += 1;
                    if y[j] <= cb[j].1 {
                        break;
                    }
                    y[j] = cb[j].0;
                    j += 1;
                }
            }
        })
        .collect();
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn small_boxes_in_golden_field() {
        let k = fields::golden();
        let sig = k.signature();
        let ok = k.unit_ideal();
        let b11 = RegionBox::new(vec![1.0, 1.0], sig).unwrap();
        assert_eq!(
            enumerate_region(&k, &k.zero(), ok.hnf(), &b11).unwrap(),
            vec![vec![1, 0]]
        );
        let b22 = RegionBox::new(vec![2.0, 2.0], sig).unwrap();
        assert_eq!(
            enumerate_region(&k, &k.zero(), ok.hnf(), &b22).unwrap(),
            vec![vec![1, 0], vec![2, 0]]
        );
        let two = k.principal_ideal(&[2, 0]).unwrap();
        assert_eq!(
            enumerate_region(&k, &k.zero(), two.hnf(), &b22).unwrap(),
            vec![vec![2, 0]]
        );
    }
}
