//! Polynomials over prime fields and their extensions.
//!
//! Polynomials are coefficient vectors, constant term first, with no trailing
//! zeros (the zero polynomial is the empty vector).

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait FiniteField {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn characteristic(&self) -> u64;
    fn order(&self) -> BigUint;
    fn from_int(&self, k: u64) -> Self::E;
}

/// The prime field `Z/pZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.p as i128) as u64
    }
    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
}

impl FiniteField for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn from_int(&self, k: u64) -> u64 {
        k % self.p
    }
}

/// The extension `F_p[t]/(m(t))` for a monic irreducible `m`.
/// Elements are coefficient vectors of length `deg m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    pub base: Fp,
    pub modulus: Vec<u64>,
}

impl Fq {
    pub fn new(base: Fp, modulus: Vec<u64>) -> Self {
        assert!(modulus.len() >= 2 && *modulus.last().unwrap() == 1);
        Fq { base, modulus }
    }
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    /// Embed a base-field polynomial in `t`, reduced modulo `m`.
    pub fn from_poly(&self, a: &[u64]) -> Vec<u64> {
        let r = rem(&self.base, &trim(&self.base, a.to_vec()), &self.modulus);
        self.pad(r)
    }
    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree(), 0);
        v
    }
}

impl FiniteField for Fq {
    type E = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1 % self.base.p;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        let prod = mul(f, &trim(f, a.clone()), &trim(f, b.clone()));
        self.pad(rem(f, &prod, &self.modulus))
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        let (g, s, _) = ext_gcd(f, &trim(f, a.clone()), &self.modulus);
        assert!(g.len() == 1, "element not invertible");
        let c = f.inv(&g[0]);
        self.pad(scale(f, &s, &c))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.base.p).pow(self.degree() as u32)
    }
    fn from_int(&self, k: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = k % self.base.p;
        v
    }
}

pub fn trim<F: FiniteField>(f: &F, mut a: Vec<F::E>) -> Vec<F::E> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn deg<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: FiniteField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: FiniteField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn mul<F: FiniteField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: FiniteField>(f: &F, a: &[F::E], c: &F::E) -> Vec<F::E> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn divrem<F: FiniteField>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(f, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(b.last().unwrap());
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, y));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: FiniteField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    divrem(f, a, b).1
}

pub fn monic<F: FiniteField>(f: &F, a: &[F::E]) -> Vec<F::E> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(f, a, &f.inv(l)),
    }
}

pub fn gcd<F: FiniteField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let mut a = trim(f, a.to_vec());
    let mut b = trim(f, b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`.
pub fn ext_gcd<F: FiniteField>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>, Vec<F::E>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(f, &t0, &mul(f, &q, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

pub fn derivative<F: FiniteField>(f: &F, a: &[F::E]) -> Vec<F::E> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_int(i as u64), c))
        .collect();
    trim(f, out)
}

pub fn eval<F: FiniteField>(f: &F, a: &[F::E], x: &F::E) -> F::E {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// `base^e mod m`.
pub fn powmod<F: FiniteField>(f: &F, base: &[F::E], e: &BigUint, m: &[F::E]) -> Vec<F::E> {
    let mut result = rem(f, &[f.one()], m);
    let b = rem(f, base, m);
    for i in (0..e.bits()).rev() {
        result = rem(f, &mul(f, &result, &result), m);
        if e.bit(i) {
            result = rem(f, &mul(f, &result, &b), m);
        }
    }
    result
}

/// Number of distinct roots of `a` in the field `f`: `deg gcd(a, X^q - X)`.
pub fn count_distinct_roots<F: FiniteField>(f: &F, a: &[F::E]) -> usize {
    let a = trim(f, a.to_vec());
    match a.len() {
        0 => panic!("zero polynomial has every element as a root"),
        1 => return 0,
        _ => {}
    }
    let x = vec![f.zero(), f.one()];
    let xq = powmod(f, &x, &f.order(), &a);
    let h = sub(f, &xq, &x);
    deg(&gcd(f, &a, &h)).unwrap_or(0)
}

/// Factor a monic polynomial over `F_p` into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients).
pub fn factor_fp(f: &Fp, a: &[u64]) -> Vec<(Vec<u64>, u32)> {
    let a = monic(f, &trim(f, a.to_vec()));
    let mut out = Vec::new();
    for (sq, mult) in squarefree(f, &a) {
        for (d, part) in distinct_degree(f, &sq) {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (f.p << 8) ^ d as u64);
            for g in equal_degree(f, &part, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    out
}

fn squarefree(f: &Fp, a: &[u64]) -> Vec<(Vec<u64>, u32)> {
    let mut out = Vec::new();
    if a.len() <= 1 {
        return out;
    }
    let p = f.p;
    let da = derivative(f, a);
    let mut c = gcd(f, a, &da);
    let mut w = divrem(f, a, &c).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if fac.len() > 1 {
            out.push((monic(f, &fac), i));
        }
        w = y;
        c = divrem(f, &c, &w).0;
        i += 1;
    }
    if c.len() > 1 {
        // c is a p-th power: take the root coefficientwise
        let root: Vec<u64> = c.iter().step_by(p as usize).cloned().collect();
        for (g, e) in squarefree(f, &root) {
            out.push((g, e * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &Fp, a: &[u64]) -> Vec<(usize, Vec<u64>)> {
    let mut out = Vec::new();
    let mut rest = a.to_vec();
    let x = vec![0, 1];
    let mut h = x.clone();
    let p = BigUint::from(f.p);
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push((rest.len() - 1, rest.clone()));
            break;
        }
        h = powmod(f, &h, &p, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if g.len() > 1 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((d, g));
        }
    }
    out
}

fn equal_degree(f: &Fp, a: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = a.len() - 1;
    if n == d {
        return vec![a.to_vec()];
    }
    loop {
        let r: Vec<u64> = trim(f, (0..n).map(|_| rng.gen_range(0..f.p)).collect());
        if r.len() < 2 {
            continue;
        }
        let t = if f.p == 2 {
            // absolute trace r + r^2 + ... + r^(2^(d-1))
            let mut acc = r.clone();
            let mut cur = r.clone();
            for _ in 1..d {
                cur = rem(f, &mul(f, &cur, &cur), a);
                acc = add(f, &acc, &cur);
            }
            acc
        } else {
            let e = (BigUint::from(f.p).pow(d as u32) - BigUint::one()) >> 1;
            sub(f, &powmod(f, &r, &e, a), &[1])
        };
        let g = gcd(f, a, &t);
        if g.len() > 1 && g.len() < a.len() {
            let other = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &monic(f, &other), d, rng));
            return out;
        }
    }
}

/// Exponent helper for callers that need `q = p^k` as a big integer.
pub fn prime_power(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(f: &Fp, facs: &[(Vec<u64>, u32)]) -> Vec<u64> {
        let mut acc = vec![1];
        for (g, e) in facs {
            for _ in 0..*e {
                acc = mul(f, &acc, g);
            }
        }
        acc
    }

    #[test]
    fn golden_ratio_poly_mod_small_primes() {
        // X^2 - X - 1
        let poly = |p: u64| vec![p - 1, p - 1, 1];
        let f2 = Fp::new(2);
        assert_eq!(factor_fp(&f2, &poly(2)), vec![(vec![1, 1, 1], 1)]);
        let f5 = Fp::new(5);
        assert_eq!(factor_fp(&f5, &poly(5)), vec![(vec![2, 1], 2)]);
        let f11 = Fp::new(11);
        let facs = factor_fp(&f11, &poly(11));
        assert_eq!(facs, vec![(vec![3, 1], 1), (vec![7, 1], 1)]);
    }

    #[test]
    fn factorization_reassembles() {
        for &p in &[2u64, 3, 5, 7, 13] {
            let f = Fp::new(p);
            // (X^3 + X + 1)^2 * (X + 1)^p * X
            let mut a = vec![1, 1, 0, 1];
            a = mul(&f, &a, &a);
            let mut lin = vec![1];
            for _ in 0..p {
                lin = mul(&f, &lin, &[1, 1]);
            }
            a = mul(&f, &a, &lin);
            a = mul(&f, &a, &[0, 1]);
            let facs = factor_fp(&f, &a);
            assert_eq!(expand(&f, &facs), a, "p = {p}");
            for (g, _) in &facs {
                assert_eq!(factor_fp(&f, g).len(), 1);
            }
        }
    }

    #[test]
    fn root_counts_in_extension() {
        let f2 = Fp::new(2);
        let f4 = Fq::new(f2, vec![1, 1, 1]);
        // X^2 + X + 1 splits over F_4
        let poly = vec![f4.one(), f4.one(), f4.one()];
        assert_eq!(count_distinct_roots(&f4, &poly), 2);
        assert_eq!(count_distinct_roots(&f2, &[1, 1, 1]), 0);
        // X^2 over F_4 has the single root 0
        assert_eq!(
            count_distinct_roots(&f4, &[f4.zero(), f4.zero(), f4.one()]),
            1
        );
    }

    #[test]
    fn extension_inverse() {
        let f3 = Fp::new(3);
        let f9 = Fq::new(f3, vec![1, 0, 1]);
        for a in 0..3 {
            for b in 0..3 {
                let x = vec![a, b];
                if f9.is_zero(&x) {
                    continue;
                }
                assert_eq!(f9.mul(&x, &f9.inv(&x)), f9.one());
            }
        }
    }
}
