//! The compositum of the quadratic steps, as a free `O_K`-module on products
//! of the `alpha_j` with structure constants over `O_K`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, IdealLattice, NumberField};

use super::TowerStep;

#[derive(Clone, Debug, Serialize)]
pub struct CompositumBasis {
    /// Subsets `J` (as step indices) with basis element `prod_{j in J} alpha_j`.
    pub subsets: Vec<Vec<usize>>,
    /// Steps that enlarge the compositum; the others already lie in it.
    pub contributing: Vec<usize>,
    /// Relative discriminant over `K`.
    pub disc: IdealLattice,
    pub degree: u64,
}

/// Basis of the compositum and its discriminant, adding one step at a time.
pub fn compositum_basis(k: &NumberField, steps: &[TowerStep]) -> Result<CompositumBasis> {
    let mut contributing: Vec<usize> = Vec::new();
    let mut disc = k.unit_ideal();
    let mut degree = 1u64;
    for (i, s) in steps.iter().enumerate() {
        if lies_in_compositum(k, steps, &contributing, &s.disc_element)? {
            continue;
        }
        for &j in &contributing {
            if !k.coprime(&steps[j].disc_ideal, &s.disc_ideal) {
                return Err(Error::NotCoprime(format!(
                    "discriminants of steps {} and {} share a prime",
                    j + 1,
                    i + 1
                )));
            }
        }
        // D(L K') = D(L)^[K':K] D(K')^[L:K]
        disc = k.ideal_mul(
            &k.ideal_pow(&disc, 2),
            &k.ideal_pow(&s.disc_ideal, degree as u32),
        );
        degree *= 2;
        contributing.push(i);
    }
    let subsets = (0..1usize << contributing.len())
        .map(|mask| {
            contributing
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &j)| j)
                .collect()
        })
        .collect();
    Ok(CompositumBasis {
        subsets,
        contributing,
        disc,
        degree,
    })
}

/// `K(sqrt d)` lies in `K(sqrt d_j : j in S)` iff `d` times some product of
/// the `d_j` is a square.
fn lies_in_compositum(
    k: &NumberField,
    steps: &[TowerStep],
    contributing: &[usize],
    d: &[i128],
) -> Result<bool> {
    for mask in 0..1usize << contributing.len() {
        let mut x = d.to_vec();
        for (b, &j) in contributing.iter().enumerate() {
            if mask >> b & 1 == 1 {
                x = k.mul(&x, &steps[j].disc_element);
            }
        }
        if k.is_square_in_k(&x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Arithmetic in `O_K[alpha_j : j contributing]`, elements given by
/// coefficient vectors over the subset basis (indexed by bit mask).
pub struct CompositumRing<'a> {
    k: &'a NumberField,
    omegas: Vec<AlgebraicInt>,
    etas: Vec<AlgebraicInt>,
}

pub type CompositumElement = Vec<AlgebraicInt>;

impl<'a> CompositumRing<'a> {
    pub fn new(k: &'a NumberField, steps: &[TowerStep], basis: &CompositumBasis) -> Self {
        CompositumRing {
            k,
            omegas: basis
                .contributing
                .iter()
                .map(|&j| steps[j].omega.clone())
                .collect(),
            etas: basis
                .contributing
                .iter()
                .map(|&j| steps[j].eta.clone())
                .collect(),
        }
    }

    /// The ring `O_K[X] / (X^2 - omega X + eta)` of a single step.
    pub fn single(k: &'a NumberField, omega: &[i128], eta: &[i128]) -> Self {
        CompositumRing {
            k,
            omegas: vec![omega.to_vec()],
            etas: vec![eta.to_vec()],
        }
    }

    pub fn rank(&self) -> usize {
        1 << self.omegas.len()
    }

    pub fn zero(&self) -> CompositumElement {
        vec![self.k.zero(); self.rank()]
    }

    pub fn from_base(&self, a: &[i128]) -> CompositumElement {
        let mut e = self.zero();
        e[0] = a.to_vec();
        e
    }

    /// `alpha_j` for the `b`-th contributing step.
    pub fn alpha(&self, b: usize) -> CompositumElement {
        let mut e = self.zero();
        e[1 << b] = self.k.one();
        e
    }

    pub fn add(&self, x: &CompositumElement, y: &CompositumElement) -> CompositumElement {
        x.iter().zip(y).map(|(a, b)| self.k.add(a, b)).collect()
    }

    pub fn sub(&self, x: &CompositumElement, y: &CompositumElement) -> CompositumElement {
        x.iter().zip(y).map(|(a, b)| self.k.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &CompositumElement, c: &[i128]) -> CompositumElement {
        x.iter().map(|a| self.k.mul(a, c)).collect()
    }

    /// Product of two basis elements, using `alpha_j^2 = omega_j alpha_j - eta_j`.
    fn basis_product(&self, a: usize, b: usize) -> CompositumElement {
        let k = self.k;
        let mut e = self.zero();
        e[a ^ b] = k.one();
        for j in 0..self.omegas.len() {
            if (a & b) >> j & 1 == 0 {
                continue;
            }
            let mut next = self.zero();
            for (m, c) in e.iter().enumerate() {
                if k.is_zero(c) {
                    continue;
                }
                let up = m | 1 << j;
                next[up] = k.add(&next[up], &k.mul(c, &self.omegas[j]));
                next[m] = k.sub(&next[m], &k.mul(c, &self.etas[j]));
            }
            e = next;
        }
        e
    }

    pub fn mul(&self, x: &CompositumElement, y: &CompositumElement) -> CompositumElement {
        let k = self.k;
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate() {
            if k.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if k.is_zero(yb) {
                    continue;
                }
                let c = k.mul(xa, yb);
                for (m, t) in self.basis_product(a, b).iter().enumerate() {
                    if !k.is_zero(t) {
                        out[m] = k.add(&out[m], &k.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    /// `alpha_j^(-1) = eta_j^(-1) (omega_j - alpha_j)`.
    pub fn alpha_inverse(&self, b: usize) -> Option<CompositumElement> {
        let inv = self.k.inverse(&self.etas[b])?;
        let w = self.sub(&self.from_base(&self.omegas[b]), &self.alpha(b));
        Some(self.scale(&w, &inv))
    }
}
