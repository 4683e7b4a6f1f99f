//! Real lattices, their successive minima and the lattice-point error bound.

use serde::Serialize;

use crate::arith::fmat;
use crate::arith::hnf::{self, Row};
use crate::error::{Error, Result};

/// Largest dimension handled by exact shell enumeration.
pub const MINIMA_DIM_LIMIT: usize = 4;
/// Lattice vectors examined before `successive_minima` gives up.
pub const MINIMA_ENUM_CAP: u128 = 50_000_000;

/// A full-rank lattice in `R^n`. Row `k` of `basis` is the image of the
/// `k`-th generator.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddedLattice {
    basis: Vec<Vec<f64>>,
    det: f64,
    minima: Option<Vec<f64>>,
}

impl EmbeddedLattice {
    pub fn from_rows(basis: Vec<Vec<f64>>) -> Result<Self> {
        let n = basis.len();
        if n == 0 || basis.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("lattice basis must be square".into()));
        }
        if basis.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("lattice basis must be finite".into()));
        }
        let det = fmat::det(&basis).abs();
        if det == 0.0 {
            return Err(Error::InvalidInput("lattice basis is singular".into()));
        }
        Ok(EmbeddedLattice {
            basis,
            det,
            minima: None,
        })
    }

    /// Integer lattice given by generator rows.
    pub fn from_integer_rows(rows: &[Row]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| c as f64).collect())
                .collect(),
        )
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn minima(&self) -> Option<&[f64]> {
        self.minima.as_deref()
    }

    /// Image under the diagonal map `e_i -> factors[i] e_i`.
    pub fn scaled(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.dim() {
            return Err(Error::InvalidInput("scaling has the wrong length".into()));
        }
        Self::from_rows(
            self.basis
                .iter()
                .map(|r| r.iter().zip(factors).map(|(x, f)| x * f).collect())
                .collect(),
        )
    }

    /// Computes and stores the minima.
    pub fn with_minima(mut self) -> Result<Self> {
        if self.minima.is_none() {
            self.minima = Some(successive_minima(&self)?);
        }
        Ok(self)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LLL with `delta = 3/4`. Only used to shrink the enumeration radius, so
/// floating drift costs speed, never correctness.
fn lll(mut b: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = b.len();
    let gso = |b: &[Vec<f64>]| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / dot(&bs[j], &bs[j]);
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= mu[i][j] * y;
                }
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (_, mu) = gso(&b);
            let q = mu[k][j].round();
            if q != 0.0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(bj) {
                    *x -= q * y;
                }
            }
        }
        let (bs, mu) = gso(&b);
        let lhs = dot(&bs[k], &bs[k]);
        let rhs = (0.75 - mu[k][k - 1] * mu[k][k - 1]) * dot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Successive minima with respect to the Euclidean unit ball, by exhaustive
/// enumeration of all lattice vectors up to the largest reduced basis norm.
pub fn successive_minima(l: &EmbeddedLattice) -> Result<Vec<f64>> {
    let n = l.dim();
    if n > MINIMA_DIM_LIMIT {
        return Err(Error::DimensionCap {
            dim: n,
            limit: MINIMA_DIM_LIMIT,
        });
    }
    let red = lll(l.basis.clone());
    let radius = red.iter().map(|r| fmat::norm2(r)).fold(0.0, f64::max) * (1.0 + 1e-9);
    let inv = fmat::invert(&red).ok_or_else(|| Error::InvalidInput("singular basis".into()))?;
    let bounds: Vec<i64> = (0..n)
        .map(|k| {
            let col: f64 = inv.iter().map(|row| row[k] * row[k]).sum::<f64>().sqrt();
            (radius * col * (1.0 + 1e-9)).floor() as i64 + 1
        })
        .collect();
    let total: u128 = bounds.iter().map(|&b| (2 * b + 1) as u128).product();
    if total > MINIMA_ENUM_CAP {
        return Err(Error::CapExceeded {
            size: total,
            cap: MINIMA_ENUM_CAP,
        });
    }
    let mut found: Vec<(f64, Row)> = Vec::new();
    let mut y: Vec<i64> = bounds.iter().map(|&b| -b).collect();
    loop {
        if y.iter().any(|&c| c != 0) {
            let yf: Vec<f64> = y.iter().map(|&c| c as f64).collect();
            let v = fmat::row_times(&yf, &red);
            let len = fmat::norm2(&v);
            if len <= radius {
                found.push((len, y.iter().map(|&c| c as i128).collect()));
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                break;
            }
            y[j] += 1;
            if y[j] <= bounds[j] {
                break;
            }
            y[j] = -bounds[j];
            j += 1;
        }
        if j == n {
            break;
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut chosen: Vec<Row> = Vec::new();
    let mut minima = Vec::with_capacity(n);
    for (len, v) in found {
        let mut trial = chosen.clone();
        trial.push(v);
        if hnf::hnf(&trial, n).len() == trial.len() {
            chosen = trial;
            minima.push(len);
            if minima.len() == n {
                break;
            }
        }
    }
    if minima.len() < n {
        return Err(Error::SearchExhausted(
            "fewer than n independent vectors found".into(),
        ));
    }
    Ok(minima)
}

/// `n^(3n^2/2)`.
pub fn widmer_constant(n: usize) -> f64 {
    let n = n as f64;
    n.powf(1.5 * n * n)
}

/// Error bound for `|#(B ∩ L) - vol B / det L|` when the boundary of `B` is
/// covered by `maps` Lipschitz images of `[0,1]^(n-1)` with constant `lip`.
pub fn widmer_bound(l: &EmbeddedLattice, maps: usize, lip: f64) -> Result<f64> {
    let minima = match l.minima() {
        Some(m) => m.to_vec(),
        None => successive_minima(l)?,
    };
    Ok(widmer_bound_from_minima(&minima, maps, lip))
}

pub fn widmer_bound_from_minima(minima: &[f64], maps: usize, lip: f64) -> f64 {
    let n = minima.len();
    let mut best = 1.0f64;
    let mut term = 1.0f64;
    for lam in minima.iter().take(n.saturating_sub(1)) {
        term *= lip / lam;
        best = best.max(term);
    }
    widmer_constant(n) * maps as f64 * best
}

/// Lattice points in the axis box `lo <= v <= hi`.
pub fn count_in_box(l: &EmbeddedLattice, lo: &[f64], hi: &[f64]) -> Result<u64> {
    let n = l.dim();
    if lo.len() != n || hi.len() != n || lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Err(Error::InvalidInput("malformed box".into()));
    }
    let inv = fmat::invert(&l.basis).ok_or_else(|| Error::InvalidInput("singular basis".into()))?;
    let mut ranges = Vec::with_capacity(n);
    for k in 0..n {
        let (mut a, mut b) = (0.0f64, 0.0f64);
        for i in 0..n {
            let g = inv[i][k];
            a += (lo[i] * g).min(hi[i] * g);
            b += (lo[i] * g).max(hi[i] * g);
        }
        let slack = 1e-9 * (a.abs() + b.abs()) + 1.0;
        ranges.push(((a - slack).floor() as i64, (b + slack).ceil() as i64));
    }
    let total: u128 = ranges.iter().map(|(a, b)| (b - a + 1) as u128).product();
    if total > super::ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            size: total,
            cap: super::ENUMERATION_CAP,
        });
    }
    let mut count = 0u64;
    let mut y: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    'outer: loop {
        let yf: Vec<f64> = y.iter().map(|&c| c as f64).collect();
        let v = fmat::row_times(&yf, &l.basis);
        if v.iter()
            .zip(lo.iter().zip(hi))
            .all(|(x, (a, b))| a <= x && x <= b)
        {
            count += 1;
        }
        for j in 0..n {
            y[j] += 1;
            if y[j] <= ranges[j].1 {
                continue 'outer;
            }
            y[j] = ranges[j].0;
        }
        break;
    }
    Ok(count)
}
