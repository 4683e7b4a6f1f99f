//! Comparing the sieve density of a proper order with that of `O_K` for
//! `f = X^2 - 4 eta`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::arith::interval::RatInterval;
use crate::error::{Error, Result};
use crate::nf_core::{NumberField, PrimeIdealData, SubOrder};

use super::euler::{conductor_sum, euler_density};
use super::roots::root_count_prime_power;
use super::{DensityParams, SievePolynomial};

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    #[serde(serialize_with = "ser_rat")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub rhs: BigRational,
    pub strict_gap: bool,
    pub order_density: RatInterval,
    pub maximal_density: RatInterval,
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::arith::interval::rat_string(q))
}

/// Primes above 2 and 3 must have residue degree above 1. Returns the first
/// offending prime.
pub fn small_prime_obstruction(k: &NumberField) -> Result<Option<PrimeIdealData>> {
    for p in [2u128, 3] {
        if let Some(pr) = k.primes_above(p)?.iter().find(|pr| pr.residue_degree == 1) {
            return Ok(Some(pr.clone()));
        }
    }
    Ok(None)
}

pub(crate) fn base_change_remedy() -> String {
    "pass to an extension in which every prime above 2 and 3 has residue degree > 1, \
     e.g. adjoin sqrt(5); this base change is not automated"
        .into()
}

/// Evaluates both sides of the strict inequality between the order's
/// finite factor and the product over conductor primes, plus both
/// densities at the given truncation.
pub fn density_gap_check(
    k: &NumberField,
    o: &SubOrder,
    eta: &[i128],
    excluded: &[PrimeIdealData],
    truncation_norm: u128,
) -> Result<GapReport> {
    if o.is_maximal() {
        return Err(Error::Hypothesis {
            reason: "the order is the maximal order".into(),
            remedy: "supply a proper suborder".into(),
        });
    }
    if let Some(pr) = small_prime_obstruction(k)? {
        return Err(Error::Hypothesis {
            reason: format!(
                "a prime above {} has residue degree 1 (ramification {})",
                pr.p, pr.ramification
            ),
            remedy: base_change_remedy(),
        });
    }
    if !o.contains(eta) {
        return Err(Error::Hypothesis {
            reason: "eta is not in the order".into(),
            remedy: "choose eta inside the order".into(),
        });
    }
    if k.is_square_in_k(eta)? {
        return Err(Error::Hypothesis {
            reason: "eta is a square in the field".into(),
            remedy: "choose a non-square eta".into(),
        });
    }
    let f = SievePolynomial::x2_minus_4(k, eta)?;
    let po = DensityParams::new(k, o.clone(), f.clone(), excluded.to_vec(), 2)?;
    let pm = DensityParams::new(k, k.maximal_order(), f.clone(), po.excluded.clone(), 2)?;
    let lhs = conductor_sum(&po)? / BigRational::from_integer(BigInt::from(o.index()));
    let mut rhs = BigRational::one();
    for pr in po.conductor_primes()? {
        let l = root_count_prime_power(k, &f, &pr, 1)?;
        rhs *= BigRational::one() - BigRational::new(BigInt::from(l), BigInt::from(pr.norm()));
    }
    let order_density = euler_density(&po, truncation_norm)?.interval;
    let maximal_density = euler_density(&pm, truncation_norm)?.interval;
    Ok(GapReport {
        strict_gap: lhs < rhs,
        lhs,
        rhs,
        order_density,
        maximal_density,
    })
}
