use std::fmt;

use serde::Serialize;

use crate::arith::hnf::{self, Row};
use crate::error::{Error, Result};

use super::field::NumberField;
use super::{AlgebraicInt, RESIDUE_CAP};

/// A nonzero ideal of `O_K`, stored as the canonical row HNF of its
/// coordinate lattice. Equality is matrix equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdealLattice {
    hnf: Vec<Row>,
    norm: u128,
}

impl IdealLattice {
    pub(crate) fn from_hnf_unchecked(hnf: Vec<Row>) -> Self {
        let norm = hnf::det(&hnf) as u128;
        IdealLattice { hnf, norm }
    }

    pub fn hnf(&self) -> &[Row] {
        &self.hnf
    }

    /// `[O_K : a]`.
    pub fn norm(&self) -> u128 {
        self.norm
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm == 1
    }

    pub fn contains(&self, a: &[i128]) -> bool {
        hnf::contains(&self.hnf, a)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &IdealLattice) -> bool {
        self.hnf.iter().all(|r| other.contains(r))
    }

    /// `self | other`, i.e. `other ⊆ self`.
    pub fn divides(&self, other: &IdealLattice) -> bool {
        other.is_subset_of(self)
    }

    /// Canonical representative of `a` modulo the ideal.
    pub fn reduce(&self, a: &[i128]) -> AlgebraicInt {
        hnf::reduce(&self.hnf, a)
    }

    /// Complete residue system of `O_K / a` from the HNF diagonal.
    pub fn residues(&self) -> impl Iterator<Item = AlgebraicInt> + '_ {
        hnf::residue_box(&self.hnf)
    }

    /// Bit-exact serialization: rows separated by `;`, entries by `,`.
    pub fn canonical_string(&self) -> String {
        self.hnf
            .iter()
            .map(|r| r.iter().map(i128::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for IdealLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical_string())
    }
}

/// Absolute norm of a nonzero ideal.
pub fn ideal_norm(a: &IdealLattice) -> u128 {
    a.norm()
}

impl NumberField {
    pub fn unit_ideal(&self) -> IdealLattice {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| (i == j) as i128).collect())
            .collect();
        IdealLattice::from_hnf_unchecked(rows)
    }

    pub fn principal_ideal(&self, a: &[i128]) -> Result<IdealLattice> {
        let nm = self.norm(a).unsigned_abs();
        if nm == 0 {
            return Err(Error::ZeroIdeal);
        }
        Ok(self.ideal_with_modulus(&[a.to_vec()], nm as i128))
    }

    /// Ideal generated by `gens` when `modulus` is known to lie in it.
    pub(crate) fn ideal_with_modulus(&self, gens: &[AlgebraicInt], modulus: i128) -> IdealLattice {
        let rows: Vec<Row> = gens.iter().flat_map(|g| self.mul_matrix(g)).collect();
        IdealLattice::from_hnf_unchecked(hnf::hnf_modular(&rows, self.n, modulus))
    }

    pub fn ideal_from_generators(&self, gens: &[AlgebraicInt]) -> Result<IdealLattice> {
        let rows: Vec<Row> = gens.iter().flat_map(|g| self.mul_matrix(g)).collect();
        let h = hnf::hnf(&rows, self.n);
        if !hnf::is_full_rank(&h, self.n) {
            return Err(Error::ZeroIdeal);
        }
        Ok(IdealLattice::from_hnf_unchecked(h))
    }

    /// Validates that a lattice given by rows is an ideal.
    pub fn ideal_from_rows(&self, rows: &[Row]) -> Result<IdealLattice> {
        let h = hnf::hnf(rows, self.n);
        if !hnf::is_full_rank(&h, self.n) {
            return Err(Error::ZeroIdeal);
        }
        let a = IdealLattice::from_hnf_unchecked(h);
        for r in a.hnf() {
            for i in 0..self.n {
                let mut e = vec![0; self.n];
                e[i] = 1;
                if !a.contains(&self.mul(r, &e)) {
                    return Err(Error::InvalidInput("lattice is not an ideal".into()));
                }
            }
        }
        Ok(a)
    }

    pub fn ideal_mul(&self, a: &IdealLattice, b: &IdealLattice) -> IdealLattice {
        let modulus = (a.norm() * b.norm()) as i128;
        let mut rows = Vec::with_capacity(self.n * self.n);
        for x in a.hnf() {
            for y in b.hnf() {
                rows.push(self.mul(x, y));
            }
        }
        IdealLattice::from_hnf_unchecked(hnf::hnf_modular(&rows, self.n, modulus))
    }

    pub fn ideal_pow(&self, a: &IdealLattice, k: u32) -> IdealLattice {
        let mut acc = self.unit_ideal();
        for _ in 0..k {
            acc = self.ideal_mul(&acc, a);
        }
        acc
    }

    pub fn ideal_add(&self, a: &IdealLattice, b: &IdealLattice) -> IdealLattice {
        let mut rows = a.hnf().to_vec();
        rows.extend_from_slice(b.hnf());
        let m = num_integer::gcd(a.norm(), b.norm()) as i128;
        IdealLattice::from_hnf_unchecked(hnf::hnf_modular(&rows, self.n, m))
    }

    pub fn ideal_intersect(&self, a: &IdealLattice, b: &IdealLattice) -> IdealLattice {
        IdealLattice::from_hnf_unchecked(hnf::intersection(a.hnf(), b.hnf(), self.n))
    }

    pub fn coprime(&self, a: &IdealLattice, b: &IdealLattice) -> bool {
        self.ideal_add(a, b).is_unit_ideal()
    }

    /// True if `f(beta)` lies in `a` for every `beta` in `O_K`, checked on one
    /// complete residue system modulo `a`.
    pub fn is_fixed_divisor(&self, f: &[AlgebraicInt], a: &IdealLattice) -> Result<bool> {
        if a.norm() > RESIDUE_CAP {
            return Err(Error::CapExceeded {
                size: a.norm(),
                cap: RESIDUE_CAP,
            });
        }
        Ok(a.residues().all(|b| a.contains(&self.eval_poly(f, &b))))
    }
}
