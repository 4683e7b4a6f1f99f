//! Outward-rounded rational intervals.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Denominator exponent used when rounding interval endpoints.
pub const INTERVAL_BITS: u64 = 96;

pub fn rat(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Largest multiple of `2^-bits` not above `q`.
pub fn dyadic_floor(q: &BigRational, bits: u64) -> BigRational {
    if q.denom().bits() <= bits + 1 && (q.denom() & (q.denom() - BigInt::one())).is_zero() {
        return q.clone();
    }
    let s = pow2(bits);
    let num = (q.numer() * &s).div_floor(q.denom());
    BigRational::new(num, s)
}

/// Smallest multiple of `2^-bits` not below `q`.
pub fn dyadic_ceil(q: &BigRational, bits: u64) -> BigRational {
    -dyadic_floor(&-q.clone(), bits)
}

/// Nearest multiple of `2^-bits`, ties toward minus infinity.
pub fn dyadic_round(q: &BigRational, bits: u64) -> BigRational {
    let s = pow2(bits);
    let scaled = q * BigRational::from_integer(s.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let num = (scaled + half).floor().to_integer();
    BigRational::new(num, s)
}

/// Lower bound for `sqrt(q)`, accurate to `2^-bits`.
pub fn sqrt_lower(q: &BigRational, bits: u64) -> BigRational {
    assert!(!q.is_negative());
    let s = pow2(bits);
    let scaled = (q * BigRational::from_integer(&s * &s))
        .floor()
        .to_integer();
    let r = scaled.to_biguint().unwrap().sqrt();
    BigRational::new(BigInt::from(r), s)
}

/// Upper bound for `sqrt(q)`, accurate to `2^-bits`.
pub fn sqrt_upper(q: &BigRational, bits: u64) -> BigRational {
    let lo = sqrt_lower(q, bits);
    if &(&lo * &lo) == q {
        return lo;
    }
    lo + BigRational::new(BigInt::one(), pow2(bits))
}

/// Exact conversion of a finite `f64` (every finite double is dyadic).
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A closed interval `[lo, hi]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(q: BigRational) -> Self {
        RatInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        RatInterval { lo, hi }
    }

    pub fn one() -> Self {
        Self::point(BigRational::one())
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    /// Product of two intervals with nonnegative endpoints, rounded outward.
    pub fn mul_nonneg(&self, other: &RatInterval) -> RatInterval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RatInterval {
            lo: dyadic_floor(&(&self.lo * &other.lo), INTERVAL_BITS),
            hi: dyadic_ceil(&(&self.hi * &other.hi), INTERVAL_BITS),
        }
    }

    pub fn scale_nonneg(&self, q: &BigRational) -> RatInterval {
        self.mul_nonneg(&RatInterval::point(q.clone()))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            decimal_floor(&self.lo, 15),
            decimal_ceil(&self.hi, 15)
        )
    }
}

impl serde::Serialize for RatInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatInterval", 2)?;
        st.serialize_field("lo", &decimal_floor(&self.lo, 20))?;
        st.serialize_field("hi", &decimal_ceil(&self.hi, 20))?;
        st.end()
    }
}

/// Enclosure of pi from its first 40 decimal digits.
pub fn pi_interval() -> RatInterval {
    let num: BigInt = "31415926535897932384626433832795028841971".parse().unwrap();
    let den = BigInt::from(10u32).pow(40);
    let lo = BigRational::new(num.clone(), den.clone());
    let hi = BigRational::new(num + 1, den);
    RatInterval { lo, hi }
}

fn ten_pow(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Decimal string of `floor(q * 10^digits) / 10^digits`.
pub fn decimal_floor(q: &BigRational, digits: u32) -> String {
    let s = ten_pow(digits);
    let n = (q.numer() * &s).div_floor(q.denom());
    format_fixed(&n, digits)
}

/// Decimal string of `ceil(q * 10^digits) / 10^digits`.
pub fn decimal_ceil(q: &BigRational, digits: u32) -> String {
    let s = ten_pow(digits);
    let n = -((-(q.numer() * &s)).div_floor(q.denom()));
    format_fixed(&n, digits)
}

/// Decimal string rounded to nearest.
pub fn decimal_round(q: &BigRational, digits: u32) -> String {
    let s = BigRational::from_integer(ten_pow(digits));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = (q * s + half).floor().to_integer();
    format_fixed(&n, digits)
}

fn format_fixed(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let abs: BigUint = n.abs().to_biguint().unwrap();
    let mut s = abs.to_string();
    if digits > 0 {
        let d = digits as usize;
        if s.len() <= d {
            s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
        }
        s.insert(s.len() - d, '.');
    }
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

/// Print a rational exactly as `p/q` (or `p` when integral).
pub fn rat_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
