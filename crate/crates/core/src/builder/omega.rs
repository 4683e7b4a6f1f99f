//! Search for `omega` outside an order with `omega^2 - 4 eta` squarefree and
//! avoiding a finite set of primes.

use rayon::prelude::*;

use crate::density::base_change_remedy;
use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, NumberField, PrimeIdealData, SubOrder};

use super::units::check_hypotheses;

/// `0, 1, -1, 2, -2, ...` ordering of a coordinate.
fn zigzag(c: i128) -> i128 {
    if c > 0 {
        2 * c - 1
    } else {
        -2 * c
    }
}

/// All coordinate vectors of max-norm exactly `b`, in lexicographic zigzag
/// order.
pub fn shell(n: usize, b: i128) -> Vec<AlgebraicInt> {
    let mut out = Vec::new();
    let mut y = vec![-b; n];
    loop {
        if y.iter().any(|c| c.abs() == b) {
            out.push(y.clone());
        }
        let mut j = 0;
        loop {
            if j == n {
                out.sort_by_key(|v| v.iter().map(|&c| zigzag(c)).collect::<Vec<_>>());
                return out;
            }
            y[j] += 1;
            if y[j] <= b {
                break;
            }
            y[j] = -b;
            j += 1;
        }
    }
}

/// The three conditions on a candidate, checked independently.
pub fn omega_conditions(
    k: &NumberField,
    o: &SubOrder,
    excluded: &[PrimeIdealData],
    eta: &[i128],
    w: &[i128],
) -> Result<bool> {
    if o.contains(w) {
        return Ok(false);
    }
    let d = k.sub(&k.mul(w, w), &k.scale(eta, 4));
    if k.is_zero(&d) || excluded.iter().any(|pr| pr.contains(&d)) {
        return Ok(false);
    }
    k.is_mfree_element(&d, 2)
}

pub(crate) fn check_eta(k: &NumberField, o: &SubOrder, eta: &[i128]) -> Result<()> {
    if !o.contains(eta) {
        return Err(Error::Precondition("eta must lie in the order".into()));
    }
    if !k.is_unit(eta) {
        return Err(Error::Precondition("eta must be a unit".into()));
    }
    if k.is_square_in_k(eta)? {
        return Err(Error::Hypothesis {
            reason: "eta is a square in the field".into(),
            remedy: "choose a non-square unit".into(),
        });
    }
    Ok(())
}

/// First `omega` by increasing max-norm that satisfies the conditions, with
/// the conductor primes added to `excluded`.
pub fn find_omega(
    k: &NumberField,
    o: &SubOrder,
    excluded: &[PrimeIdealData],
    eta: &[i128],
    search_bound: u32,
) -> Result<AlgebraicInt> {
    if !check_hypotheses(k)? {
        return Err(Error::Hypothesis {
            reason: "a prime above 2 or 3 has residue degree 1".into(),
            remedy: base_change_remedy(),
        });
    }
    if o.is_maximal() {
        return Err(Error::Precondition("the order is already maximal".into()));
    }
    check_eta(k, o, eta)?;
    let mut primes = excluded.to_vec();
    for pr in k.support(o.conductor())? {
        if !primes.contains(&pr) {
            primes.push(pr);
        }
    }
    for b in 1..=search_bound as i128 {
        let cands = shell(k.degree(), b);
        let hit = cands
            .par_iter()
            .map(|w| omega_conditions(k, o, &primes, eta, w).map(|ok| ok.then(|| w.clone())))
            .find_first(|r| !matches!(r, Ok(None)));
        if let Some(r) = hit {
            return r.map(|w| w.unwrap());
        }
    }
    Err(Error::SearchExhausted(format!(
        "no omega with coordinates up to {search_bound}"
    )))
}
