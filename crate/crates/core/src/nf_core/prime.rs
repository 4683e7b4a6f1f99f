//! Prime ideals by Kummer-Dedekind splitting, factorization of ideals and
//! the squarefree/m-free tests built on it.

use std::sync::Arc;

use crate::arith::factor::{factorize, is_m_free_integer, is_prime, primes_up_to};
use crate::arith::ffpoly::{self, FiniteField, Fp, Fq};
use crate::error::{Error, Result};

use super::field::NumberField;
use super::ideal::IdealLattice;

/// A prime ideal `P = (p, g(theta))` above the rational prime `p`.
#[derive(Clone, Debug)]
pub struct PrimeIdealData {
    pub p: u128,
    /// Monic irreducible factor of the defining polynomial mod `p`.
    pub generator_poly: Vec<u64>,
    pub residue_degree: u32,
    pub ramification: u32,
    pub ideal: IdealLattice,
    /// Position among the primes above `p`.
    pub index: usize,
    /// Images of the integral basis in `F_p[t] / (g)`.
    residue_images: Vec<Vec<u64>>,
}

impl PartialEq for PrimeIdealData {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.ideal == other.ideal
    }
}

impl Eq for PrimeIdealData {}

impl PrimeIdealData {
    /// `N(P) = p^f`.
    pub fn norm(&self) -> u128 {
        self.p.pow(self.residue_degree)
    }

    pub fn residue_field(&self) -> Fq {
        Fq::new(Fp::new(self.p as u64), self.generator_poly.clone())
    }

    /// Image of an element in the residue field `O_K / P`.
    pub fn residue(&self, a: &[i128]) -> Vec<u64> {
        let fq = self.residue_field();
        let fp = Fp::new(self.p as u64);
        let mut acc = fq.zero();
        for (c, img) in a.iter().zip(&self.residue_images) {
            let c = fp.reduce(*c);
            if c != 0 {
                let term: Vec<u64> = img.iter().map(|x| fp.mul(x, &c)).collect();
                acc = fq.add(&acc, &term);
            }
        }
        acc
    }

    pub fn contains(&self, a: &[i128]) -> bool {
        self.ideal.contains(a)
    }
}

impl NumberField {
    /// Primes above `p`, sorted by the factor of the defining polynomial.
    pub fn primes_above(&self, p: u128) -> Result<Arc<Vec<PrimeIdealData>>> {
        if let Some(v) = self.primes.lock().unwrap().get(&p) {
            return Ok(v.clone());
        }
        if !is_prime(p)? {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if self.power_index.is_multiple_of(p) {
            return Err(Error::NonMonogenic { p });
        }
        let p64 = u64::try_from(p).map_err(|_| Error::FactorizationLimit(p))?;
        let fp = Fp::new(p64);
        let fbar: Vec<u64> =
            ffpoly::trim(&fp, self.min_poly.iter().map(|&c| fp.reduce(c)).collect());
        let facs = ffpoly::factor_fp(&fp, &fbar);
        let mut out = Vec::with_capacity(facs.len());
        for (index, (g, e)) in facs.into_iter().enumerate() {
            let mut g_elem = self.zero();
            for (j, &c) in g.iter().enumerate() {
                let tj = self.theta_power(j);
                g_elem = self.add(&g_elem, &self.scale(&tj, c as i128));
            }
            let ideal = self.ideal_with_modulus(&[self.from_int(p as i128), g_elem], p as i128);
            let f = (g.len() - 1) as u32;
            debug_assert_eq!(ideal.norm(), p.pow(f));
            let fq = Fq::new(fp, g.clone());
            let residue_images = self
                .basis
                .iter()
                .map(|row| {
                    let mut acc = fq.zero();
                    for (j, q) in row.iter().enumerate() {
                        let num = fp.reduce(*q.numer());
                        if num == 0 {
                            continue;
                        }
                        let c = fp.mul(&num, &fp.inv(&fp.reduce(*q.denom())));
                        let tj = fq.from_poly(&ffpoly::rem(&fp, &monomial(j), &g));
                        acc = fq.add(&acc, &tj.iter().map(|x| fp.mul(x, &c)).collect());
                    }
                    acc
                })
                .collect();
            out.push(PrimeIdealData {
                p,
                generator_poly: g,
                residue_degree: f,
                ramification: e,
                ideal,
                index,
                residue_images,
            });
        }
        let out = Arc::new(out);
        self.primes.lock().unwrap().insert(p, out.clone());
        Ok(out)
    }

    /// `P^k`, cached.
    pub fn prime_power(&self, pr: &PrimeIdealData, k: u32) -> Arc<IdealLattice> {
        let key = (pr.p, pr.index, k);
        if let Some(v) = self.prime_powers.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.ideal_pow(&pr.ideal, k));
        self.prime_powers.lock().unwrap().insert(key, v.clone());
        v
    }

    /// All prime ideals of norm at most `bound`, ordered by norm.
    pub fn primes_up_to_norm(&self, bound: u128) -> Result<Vec<PrimeIdealData>> {
        let mut out = Vec::new();
        for p in primes_up_to(bound.min(u64::MAX as u128) as u64) {
            for pr in self.primes_above(p as u128)?.iter() {
                if pr.norm() <= bound {
                    out.push(pr.clone());
                }
            }
        }
        out.sort_by_key(|pr| (pr.norm(), pr.p, pr.index));
        Ok(out)
    }

    /// `v_P(a)` for a nonzero ideal.
    pub fn ideal_valuation(&self, a: &IdealLattice, pr: &PrimeIdealData) -> u32 {
        let mut k = 0;
        let mut n = a.norm();
        let q = pr.norm();
        while n.is_multiple_of(q) {
            if !a.is_subset_of(&self.prime_power(pr, k + 1)) {
                break;
            }
            k += 1;
            n /= q;
        }
        k
    }

    /// `v_P(a)` for a nonzero element.
    pub fn valuation(&self, a: &[i128], pr: &PrimeIdealData) -> u32 {
        let mut n = self.norm(a).unsigned_abs();
        assert!(n != 0, "valuation of zero");
        let q = pr.norm();
        let mut k = 0;
        while n.is_multiple_of(q) && self.prime_power(pr, k + 1).contains(a) {
            k += 1;
            n /= q;
        }
        k
    }

    /// Prime factorization of a nonzero ideal.
    pub fn factor_ideal(&self, a: &IdealLattice) -> Result<Vec<(PrimeIdealData, u32)>> {
        let mut out = Vec::new();
        for (p, _) in factorize(a.norm())? {
            for pr in self.primes_above(p)?.iter() {
                let v = self.ideal_valuation(a, pr);
                if v > 0 {
                    out.push((pr.clone(), v));
                }
            }
        }
        Ok(out)
    }

    /// Prime factorization of the principal ideal `(a)`.
    pub fn factor_element(&self, a: &[i128]) -> Result<Vec<(PrimeIdealData, u32)>> {
        let n = self.norm(a).unsigned_abs();
        if n == 0 {
            return Err(Error::ZeroIdeal);
        }
        let mut out = Vec::new();
        for (p, _) in factorize(n)? {
            for pr in self.primes_above(p)?.iter() {
                let v = self.valuation(a, pr);
                if v > 0 {
                    out.push((pr.clone(), v));
                }
            }
        }
        Ok(out)
    }

    /// Möbius function on ideals.
    pub fn mobius(&self, a: &IdealLattice) -> Result<i8> {
        let f = self.factor_ideal(a)?;
        if f.iter().any(|(_, e)| *e > 1) {
            return Ok(0);
        }
        Ok(if f.len() % 2 == 0 { 1 } else { -1 })
    }

    /// True if no `P^m` divides `a`.
    pub fn is_mfree(&self, a: &IdealLattice, m: u32) -> Result<bool> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        if is_m_free_integer(a.norm(), m)? {
            return Ok(true);
        }
        Ok(self.factor_ideal(a)?.iter().all(|(_, e)| *e < m))
    }

    /// m-freeness of the principal ideal `(a)`, `a != 0`.
    pub fn is_mfree_element(&self, a: &[i128], m: u32) -> Result<bool> {
        let n = self.norm(a).unsigned_abs();
        if n == 0 {
            return Err(Error::ZeroIdeal);
        }
        let facs = factorize(n)?;
        for (p, e) in facs {
            if e < m {
                continue;
            }
            for pr in self.primes_above(p)?.iter() {
                if pr.residue_degree * m <= e && self.prime_power(pr, m).contains(a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every ideal of norm at most `bound`, ordered by `(norm, hnf)`.
    pub fn ideals_up_to_norm(&self, bound: u128) -> Result<Vec<IdealLattice>> {
        let primes = self.primes_up_to_norm(bound)?;
        let mut out = Vec::new();
        fn rec(
            k: &NumberField,
            primes: &[PrimeIdealData],
            start: usize,
            cur: &IdealLattice,
            bound: u128,
            out: &mut Vec<IdealLattice>,
        ) {
            out.push(cur.clone());
            for i in start..primes.len() {
                if cur.norm() * primes[i].norm() > bound {
                    break;
                }
                let next = k.ideal_mul(cur, &primes[i].ideal);
                rec(k, primes, i, &next, bound, out);
            }
        }
        rec(self, &primes, 0, &self.unit_ideal(), bound, &mut out);
        out.sort_by(|a, b| (a.norm(), a.hnf()).cmp(&(b.norm(), b.hnf())));
        Ok(out)
    }

    /// Prime ideals dividing `a`.
    pub fn support(&self, a: &IdealLattice) -> Result<Vec<PrimeIdealData>> {
        Ok(self.factor_ideal(a)?.into_iter().map(|(p, _)| p).collect())
    }

    /// Reconstruct an ideal from a factorization.
    pub fn ideal_from_factors(&self, f: &[(PrimeIdealData, u32)]) -> IdealLattice {
        f.iter().fold(self.unit_ideal(), |acc, (p, e)| {
            self.ideal_mul(&acc, &self.prime_power(p, *e))
        })
    }
}

fn monomial(j: usize) -> Vec<u64> {
    let mut v = vec![0u64; j + 1];
    v[j] = 1;
    v
}
