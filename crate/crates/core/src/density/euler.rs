//! The sieve density as a rigorous interval: exact finite parts, a truncated
//! Euler product and an explicit tail.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::factor::factorize;
use crate::arith::interval::{
    dyadic_ceil, dyadic_floor, pi_interval, rat_int, sqrt_lower, sqrt_upper, RatInterval,
    INTERVAL_BITS,
};
use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, NumberField, PrimeIdealData, SubOrder};

use super::exponent::mfree_threshold;
use super::roots::{root_count_order_brute, root_count_prime_power};
use super::SievePolynomial;

/// Inputs of the sieve: which elements of which order are counted, and
/// which primes are excluded outright.
#[derive(Clone, Debug)]
pub struct DensityParams<'a> {
    pub field: &'a NumberField,
    pub order: SubOrder,
    pub poly: SievePolynomial,
    /// Always contains every prime dividing the conductor.
    pub excluded: Vec<PrimeIdealData>,
    pub m: u32,
}

fn prime_key(p: &PrimeIdealData) -> (u128, u128, usize) {
    (p.norm(), p.p, p.index)
}

impl<'a> DensityParams<'a> {
    /// Adds the conductor primes to `excluded` and checks that `m` is large
    /// enough for the degree.
    pub fn new(
        field: &'a NumberField,
        order: SubOrder,
        poly: SievePolynomial,
        excluded: Vec<PrimeIdealData>,
        m: u32,
    ) -> Result<Self> {
        if !poly.has_coefficients_in(&order) {
            return Err(Error::Precondition(
                "polynomial coefficients must lie in the order".into(),
            ));
        }
        let need = mfree_threshold(poly.degree() as u32);
        if m < need {
            return Err(Error::NoAdmissibleExponent(format!(
                "m = {m} is below the threshold {need} for degree {}",
                poly.degree()
            )));
        }
        let mut excluded = excluded;
        excluded.extend(field.support(order.conductor())?);
        excluded.sort_by_key(prime_key);
        excluded.dedup();
        Ok(DensityParams {
            field,
            order,
            poly,
            excluded,
            m,
        })
    }

    /// Primes dividing the conductor.
    pub fn conductor_primes(&self) -> Result<Vec<PrimeIdealData>> {
        let mut v = self.field.support(self.order.conductor())?;
        v.sort_by_key(prime_key);
        Ok(v)
    }

    pub fn is_excluded(&self, p: &PrimeIdealData) -> bool {
        self.excluded.contains(p)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedDivisor {
    pub prime: String,
    pub norm: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerDensity {
    /// Enclosure of the density.
    pub interval: RatInterval,
    /// `(2 pi)^s / sqrt|d_K|`.
    pub volume_constant: RatInterval,
    /// `[O_K : O]`.
    pub order_index: u128,
    #[serde(serialize_with = "ser_rat")]
    pub conductor_sum: BigRational,
    /// Product over excluded primes not dividing the conductor.
    #[serde(serialize_with = "ser_rat")]
    pub finite_product: BigRational,
    /// Product over all other primes, truncation and tail included.
    pub euler_product: RatInterval,
    pub truncation_norm: u128,
    /// Lower factor bounding the primes beyond the truncation.
    #[serde(serialize_with = "ser_rat")]
    pub tail_factor: BigRational,
    /// Primes of norm above the truncation whose factor was computed anyway.
    pub exceptional_primes: Vec<String>,
    /// A prime power dividing every value, forcing density zero.
    pub fixed_divisor: Option<FixedDivisor>,
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::arith::interval::rat_string(q))
}

pub(crate) fn prime_label(p: &PrimeIdealData) -> String {
    format!("P(p={},f={},#{})", p.p, p.residue_degree, p.index)
}

/// `1 - L(P^e) / N(P)^e`, exact.
fn local_factor(
    k: &NumberField,
    f: &SievePolynomial,
    pr: &PrimeIdealData,
    e: u32,
) -> Result<BigRational> {
    let l = root_count_prime_power(k, f, pr, e)?;
    let q = BigInt::from(pr.norm()).pow(e);
    Ok(BigRational::one() - BigRational::new(BigInt::from(l), q))
}

/// `(2 pi)^s / sqrt|d_K|` enclosed.
pub fn volume_constant_interval(k: &NumberField) -> RatInterval {
    let s = k.signature().1 as u32;
    let pi = pi_interval();
    let two = rat_int(2);
    let (mut lo, mut hi) = (BigRational::one(), BigRational::one());
    for _ in 0..s {
        lo = &lo * &two * &pi.lo;
        hi = &hi * &two * &pi.hi;
    }
    let d = rat_int(k.disc().abs());
    let bits = INTERVAL_BITS;
    RatInterval::new(
        dyadic_floor(&(lo / sqrt_upper(&d, bits)), bits),
        dyadic_ceil(&(hi / sqrt_lower(&d, bits)), bits),
    )
}

/// All subsets of `primes`, as (sign, ideal).
fn squarefree_divisors(
    k: &NumberField,
    primes: &[PrimeIdealData],
) -> Vec<(i32, crate::nf_core::IdealLattice)> {
    let mut out = vec![(1, k.unit_ideal())];
    for pr in primes {
        let more: Vec<_> = out
            .iter()
            .map(|(s, a)| (-s, k.ideal_mul(a, &pr.ideal)))
            .collect();
        out.extend(more);
    }
    out
}

/// `sum over a | f` of `mu(a) L_O(a) / [O : a ∩ O]`.
pub fn conductor_sum(p: &DensityParams) -> Result<BigRational> {
    let k = p.field;
    let mut total = BigRational::zero();
    for (sign, a) in squarefree_divisors(k, &p.conductor_primes()?) {
        let l = if a.is_unit_ideal() {
            1
        } else {
            root_count_order_brute(k, &p.poly, &a, &p.order)?
        };
        let idx = k.contract_ideal(&a, &p.order).index;
        total += BigRational::new(BigInt::from(sign as i128 * l as i128), BigInt::from(idx));
    }
    Ok(total)
}

/// The same sum as a product over primes of the order above the conductor,
/// each taken at its first prime of `O_K`.
pub fn conductor_product(p: &DensityParams) -> Result<BigRational> {
    let k = p.field;
    let mut seen: Vec<Vec<Vec<i128>>> = Vec::new();
    let mut total = BigRational::one();
    for pr in p.conductor_primes()? {
        let c = k.contract_ideal(&pr.ideal, &p.order);
        if seen.contains(&c.lattice) {
            continue;
        }
        seen.push(c.lattice.clone());
        let l = root_count_order_brute(k, &p.poly, &pr.ideal, &p.order)?;
        total *= BigRational::one() - BigRational::new(BigInt::from(l), BigInt::from(c.index));
    }
    Ok(total)
}

/// Determinant over `O_K` by fraction-free elimination.
fn det_over_ok(k: &NumberField, mut m: Vec<Vec<AlgebraicInt>>) -> AlgebraicInt {
    let n = m.len();
    let mut sign = 1;
    let mut prev = k.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !k.is_zero(&m[i][c])) else {
            return k.zero();
        };
        if piv != c {
            m.swap(piv, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = k.sub(&k.mul(&m[c][c], &m[i][j]), &k.mul(&m[i][c], &m[c][j]));
                m[i][j] = k.div_exact(&t, &prev).expect("fraction-free step is exact");
            }
            m[i][c] = k.zero();
        }
        prev = m[c][c].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        k.neg(&d)
    } else {
        d
    }
}

/// `Res(f, f')`, a multiple of the discriminant.
pub fn resultant_with_derivative(k: &NumberField, f: &SievePolynomial) -> AlgebraicInt {
    let a: Vec<AlgebraicInt> = f.coeffs().iter().rev().cloned().collect();
    let b: Vec<AlgebraicInt> = f.derivative(k).into_iter().rev().collect();
    let g = a.len() - 1;
    let h = b.len() - 1;
    if h == 0 {
        return b[0].clone();
    }
    let size = g + h;
    let mut m = vec![vec![k.zero(); size]; size];
    for i in 0..h {
        for (j, c) in a.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..g {
        for (j, c) in b.iter().enumerate() {
            m[h + i][i + j] = c.clone();
        }
    }
    det_over_ok(k, m)
}

/// Rational primes where `f` may have `L(P^m) != L(P)` or `L(P) > g` fails
/// to hold trivially: divisors of the norms of the leading coefficient and
/// of `Res(f, f')`.
pub fn exceptional_rational_primes(k: &NumberField, f: &SievePolynomial) -> Result<Vec<u128>> {
    let mut out = Vec::new();
    for c in [f.leading().clone(), resultant_with_derivative(k, f)] {
        let n = k.norm(&c).unsigned_abs();
        if n == 0 {
            return Err(Error::InvalidInput("polynomial is not separable".into()));
        }
        out.extend(factorize(n)?.into_iter().map(|(p, _)| p));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn euler_density(p: &DensityParams, truncation_norm: u128) -> Result<EulerDensity> {
    let k = p.field;
    let f = &p.poly;
    let m = p.m;
    let g = f.degree() as u128;
    let n = k.degree() as u128;
    if truncation_norm < 2 {
        return Err(Error::InvalidInput(
            "truncation norm must be at least 2".into(),
        ));
    }
    let volume = volume_constant_interval(k);
    let csum = conductor_sum(p)?;
    if csum.is_negative() {
        return Err(Error::Precondition("conductor sum is negative".into()));
    }
    let cond = p.conductor_primes()?;
    let mut finite = BigRational::one();
    let mut fixed_divisor = None;
    for pr in &p.excluded {
        if !cond.contains(pr) {
            let fac = local_factor(k, f, pr, 1)?;
            if fac.is_zero() && fixed_divisor.is_none() {
                fixed_divisor = Some(FixedDivisor {
                    prime: prime_label(pr),
                    norm: pr.norm(),
                });
            }
            finite *= fac;
        }
    }
    let mut product = RatInterval::one();
    let mut visit = |pr: &PrimeIdealData, product: &mut RatInterval| -> Result<()> {
        let fac = local_factor(k, f, pr, m)?;
        if fac.is_zero() && fixed_divisor.is_none() {
            fixed_divisor = Some(FixedDivisor {
                prime: prime_label(pr),
                norm: pr.norm(),
            });
        }
        *product = product.scale_nonneg(&fac);
        Ok(())
    };
    for pr in k.primes_up_to_norm(truncation_norm)? {
        if !p.is_excluded(&pr) {
            visit(&pr, &mut product)?;
        }
    }
    let mut exceptional = Vec::new();
    for q in exceptional_rational_primes(k, f)? {
        for pr in k.primes_above(q)?.iter() {
            if pr.norm() > truncation_norm && !p.is_excluded(pr) {
                exceptional.push(prime_label(pr));
                visit(pr, &mut product)?;
            }
        }
    }
    // primes beyond the truncation contribute factors 1 - L(P)/N(P)^m with
    // L(P) <= g, and at most n primes share a norm
    let t = BigInt::from(truncation_norm);
    let tail = BigRational::new(BigInt::from(n * g), BigInt::from(m - 1) * t.pow(m - 1));
    let tail_factor = (BigRational::one() - tail).max(BigRational::zero());
    let euler = RatInterval::new(
        dyadic_floor(&(&product.lo * &tail_factor), INTERVAL_BITS),
        product.hi.clone(),
    );
    let prefactor = &csum * &finite / BigRational::from_integer(BigInt::from(p.order.index()));
    let interval = if fixed_divisor.is_some() {
        RatInterval::zero()
    } else {
        volume.scale_nonneg(&prefactor).mul_nonneg(&euler)
    };
    Ok(EulerDensity {
        interval,
        volume_constant: volume,
        order_index: p.order.index(),
        conductor_sum: csum,
        finite_product: finite,
        euler_product: euler,
        truncation_norm,
        tail_factor,
        exceptional_primes: exceptional,
        fixed_divisor,
    })
}
