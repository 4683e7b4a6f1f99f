//! Suborders of `O_K`, their conductors, and the contraction/extension maps
//! between ideals of `O_K` and of the order.

use serde::Serialize;

use crate::arith::hnf::{self, Row};
use crate::error::{Error, Result};

use super::field::{NumberField, Q};
use super::ideal::IdealLattice;
use super::AlgebraicInt;

/// An order `O ⊆ O_K` given by the HNF of its coordinate lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubOrder {
    basis: Vec<Row>,
    index: u128,
    conductor: IdealLattice,
}

/// An ideal of a suborder, as a lattice of `O_K` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractedIdeal {
    pub lattice: Vec<Row>,
    /// `[O : c]`.
    pub index: u128,
}

/// Result of comparing `[O_K : O]` with the product bound over primes of `O`
/// above the conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBound {
    pub bound: Q,
    pub index: u128,
    /// `[O_K : O]` equals the bound.
    pub attained: bool,
    /// The conductor divides the product of the extended primes.
    pub conductor_divides: bool,
}

impl SubOrder {
    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    /// `[O_K : O]`.
    pub fn index(&self) -> u128 {
        self.index
    }

    pub fn conductor(&self) -> &IdealLattice {
        &self.conductor
    }

    pub fn is_maximal(&self) -> bool {
        self.index == 1
    }

    pub fn contains(&self, a: &[i128]) -> bool {
        hnf::contains(&self.basis, a)
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// Complete residue system of `O / c` for a sublattice `c ⊆ O`.
    pub fn residues_mod(&self, c: &[Row]) -> Vec<AlgebraicInt> {
        hnf::quotient_residues(&self.basis, c)
    }
}

/// Conductor accessor.
pub fn conductor(o: &SubOrder) -> IdealLattice {
    o.conductor.clone()
}

impl NumberField {
    pub fn maximal_order(&self) -> SubOrder {
        let unit = self.unit_ideal();
        SubOrder {
            basis: unit.hnf().to_vec(),
            index: 1,
            conductor: unit,
        }
    }

    /// Order bundled with the field under `name`.
    pub fn named_order(&self, name: &str) -> Result<SubOrder> {
        match self.order_rows(name) {
            Some(rows) => self.order_from_rows(rows),
            None if name == "maximal" || name == "O_K" => Ok(self.maximal_order()),
            None => Err(Error::InvalidInput(format!("unknown order {name:?}"))),
        }
    }

    /// Validates rows spanning an order: full rank, contains 1, closed under
    /// multiplication.
    pub fn order_from_rows(&self, rows: &[Row]) -> Result<SubOrder> {
        if rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidInput(
                "order rows have the wrong length".into(),
            ));
        }
        let basis = hnf::hnf(rows, self.n);
        if !hnf::is_full_rank(&basis, self.n) {
            return Err(Error::InvalidInput(
                "order lattice is not of full rank".into(),
            ));
        }
        if !hnf::contains(&basis, &self.one()) {
            return Err(Error::InvalidInput("order does not contain 1".into()));
        }
        for x in &basis {
            for y in &basis {
                if !hnf::contains(&basis, &self.mul(x, y)) {
                    return Err(Error::InvalidInput(
                        "lattice is not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(self.finish_order(basis))
    }

    fn finish_order(&self, basis: Vec<Row>) -> SubOrder {
        let index = hnf::det(&basis) as u128;
        let conductor = self.conductor_of(&basis, index);
        SubOrder {
            basis,
            index,
            conductor,
        }
    }

    /// Smallest order containing the given elements; fails if the ring they
    /// generate has rank below the degree.
    pub fn order_generated(&self, gens: &[AlgebraicInt]) -> Result<SubOrder> {
        let mut rows = vec![self.one()];
        rows.extend(gens.iter().cloned());
        let mut lat = hnf::hnf(&rows, self.n);
        loop {
            let mut all = lat.clone();
            for (i, x) in lat.iter().enumerate() {
                for y in &lat[i..] {
                    all.push(self.mul(x, y));
                }
            }
            let next = if hnf::is_full_rank(&lat, self.n) {
                hnf::hnf_modular(&all, self.n, hnf::det(&lat))
            } else {
                hnf::hnf(&all, self.n)
            };
            if next == lat {
                break;
            }
            lat = next;
        }
        if !hnf::is_full_rank(&lat, self.n) {
            return Err(Error::InvalidInput(format!(
                "generated ring has rank {} < {}",
                lat.len(),
                self.n
            )));
        }
        Ok(self.finish_order(lat))
    }

    /// `O[w]`.
    pub fn adjoin(&self, o: &SubOrder, w: &[i128]) -> Result<SubOrder> {
        let mut gens = o.basis.clone();
        gens.push(w.to_vec());
        self.order_generated(&gens)
    }

    /// `{x : x * w_i ∈ O for all i}` as an intersection of preimages.
    fn conductor_of(&self, basis: &[Row], index: u128) -> IdealLattice {
        if index == 1 {
            return self.unit_ideal();
        }
        let n = self.n;
        let mut acc: Vec<Row> = basis.to_vec();
        for i in 1..n {
            let mut gens = Vec::with_capacity(2 * n);
            for k in 0..n {
                let mut row = self.mult[k][i].clone();
                row.extend((0..n).map(|j| (j == k) as i128));
                gens.push(row);
            }
            for o in basis {
                let mut row = o.clone();
                row.extend(std::iter::repeat_n(0, n));
                gens.push(row);
            }
            let h = hnf::hnf(&gens, 2 * n);
            let pre: Vec<Row> = h
                .into_iter()
                .filter(|r| r[..n].iter().all(|&x| x == 0))
                .map(|r| r[n..].to_vec())
                .collect();
            acc = hnf::intersection(&acc, &hnf::hnf(&pre, n), n);
        }
        IdealLattice::from_hnf_unchecked(acc)
    }

    /// `phi(a) = a ∩ O` together with `[O : a ∩ O]`.
    pub fn contract_ideal(&self, a: &IdealLattice, o: &SubOrder) -> ContractedIdeal {
        let lattice = hnf::intersection(a.hnf(), &o.basis, self.n);
        let index = hnf::det(&lattice) as u128 / o.index;
        ContractedIdeal { lattice, index }
    }

    /// `psi(c) = c O_K`; requires `c + f = O`.
    pub fn extend_contracted(&self, c: &ContractedIdeal, o: &SubOrder) -> Result<IdealLattice> {
        let sum = hnf::sum(&c.lattice, o.conductor.hnf(), self.n);
        if sum != o.basis {
            return Err(Error::NotCoprime(
                "order ideal is not coprime to the conductor".into(),
            ));
        }
        self.ideal_from_generators(&c.lattice)
    }

    /// Extension `c O_K` without the coprimality requirement.
    pub fn extend_order_ideal(&self, c: &ContractedIdeal) -> Result<IdealLattice> {
        self.ideal_from_generators(&c.lattice)
    }

    /// Product over primes `p` of `O` containing the conductor of
    /// `N(p O_K) / [O : p]`, compared with `[O_K : O]`.
    pub fn index_lower_bound(&self, o: &SubOrder) -> Result<IndexBound> {
        let mut seen: Vec<Vec<Row>> = Vec::new();
        let mut bound = Q::from_integer(1);
        let mut product = self.unit_ideal();
        if !o.is_maximal() {
            for pr in self.support(&o.conductor)? {
                let c = self.contract_ideal(&pr.ideal, o);
                if seen.contains(&c.lattice) {
                    continue;
                }
                let ext = self.extend_order_ideal(&c)?;
                bound *= Q::new(ext.norm() as i128, c.index as i128);
                product = self.ideal_mul(&product, &ext);
                seen.push(c.lattice);
            }
        }
        let index = o.index;
        Ok(IndexBound {
            attained: bound == Q::from_integer(index as i128),
            conductor_divides: o.conductor.divides(&product),
            bound,
            index,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn conductors_of_bundled_orders() {
        let k = fields::golden();
        assert_eq!(k.maximal_order().conductor(), &k.unit_ideal());
        let z5 = k.named_order("Z[sqrt5]").unwrap();
        assert_eq!(z5.index(), 2);
        assert_eq!(z5.conductor(), &k.principal_ideal(&[2, 0]).unwrap());
        let z3 = k.named_order("Z[3theta]").unwrap();
        assert_eq!(z3.index(), 3);
        assert_eq!(z3.conductor(), &k.principal_ideal(&[3, 0]).unwrap());
    }

    #[test]
    fn conductor_is_maximal_inside_order() {
        let k = fields::golden();
        let z5 = k.named_order("Z[sqrt5]").unwrap();
        let f = z5.conductor();
        assert!(f.hnf().iter().all(|r| z5.contains(r)));
        // enlarging any one coordinate of the conductor leaves the order
        for (i, row) in f.hnf().iter().enumerate() {
            let mut bigger = f.hnf().to_vec();
            let d = row[i];
            for dd in 1..d {
                if d % dd == 0 {
                    bigger[i] = row.iter().map(|x| x * dd / d).collect();
                    if let Ok(b) = k.ideal_from_rows(&bigger) {
                        assert!(!b.hnf().iter().all(|r| z5.contains(r)));
                    }
                }
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let k = fields::golden();
        let z5 = k.named_order("Z[sqrt5]").unwrap();
        assert_eq!(k.contract_ideal(&k.unit_ideal(), &z5).index, 1);
        let three = k.principal_ideal(&[3, 0]).unwrap();
        let c3 = k.contract_ideal(&three, &z5);
        assert_eq!(c3.index, 9);
        assert_eq!(k.extend_contracted(&c3, &z5).unwrap(), three);
        let two = k.principal_ideal(&[2, 0]).unwrap();
        let c2 = k.contract_ideal(&two, &z5);
        assert_eq!(c2.index, 2);
        assert!(matches!(
            k.extend_contracted(&c2, &z5),
            Err(Error::NotCoprime(_))
        ));
        let p11 = k.primes_above(11).unwrap()[0].ideal.clone();
        let c11 = k.contract_ideal(&p11, &z5);
        assert_eq!(k.extend_contracted(&c11, &z5).unwrap(), p11);
        let whole = k.contract_ideal(&k.unit_ideal(), &z5);
        assert_eq!(k.extend_contracted(&whole, &z5).unwrap(), k.unit_ideal());
    }

    #[test]
    fn index_bounds() {
        let k = fields::golden();
        let b = k.index_lower_bound(&k.maximal_order()).unwrap();
        assert_eq!((b.bound, b.attained), (Q::from_integer(1), true));
        let z5 = k
            .index_lower_bound(&k.named_order("Z[sqrt5]").unwrap())
            .unwrap();
        assert_eq!(
            (z5.bound, z5.attained, z5.conductor_divides),
            (Q::from_integer(2), true, true)
        );
        let z3 = k
            .index_lower_bound(&k.named_order("Z[3theta]").unwrap())
            .unwrap();
        assert_eq!((z3.bound, z3.attained), (Q::from_integer(3), true));
        let z4 = k.order_from_rows(&[vec![1, 0], vec![0, 4]]).unwrap();
        assert_eq!(z4.conductor(), &k.principal_ideal(&[4, 0]).unwrap());
        let b4 = k.index_lower_bound(&z4).unwrap();
        assert_eq!(
            (b4.bound, b4.attained, b4.conductor_divides),
            (Q::from_integer(2), false, false)
        );
    }

    #[test]
    fn ring_closure() {
        let k = fields::golden();
        assert!(k.order_generated(&[k.theta()]).unwrap().is_maximal());
        let o = k.order_generated(&[vec![1, 2]]).unwrap();
        assert_eq!(o, k.named_order("Z[sqrt5]").unwrap());
        assert!(k.order_generated(&[k.one()]).is_err());
    }
}
