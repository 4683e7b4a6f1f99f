//! Admissible `m` and the parameters `(l, c, eps)` behind the power saving
//! `u` in the error term.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

type Q = Ratio<i128>;

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Least integer `m >= 2` with `m >= sqrt(2g^2 + 1) - (g + 1)/2`.
pub fn mfree_threshold(g: u32) -> u32 {
    let g = g as i128;
    // m + (g+1)/2 >= sqrt(2g^2+1)  <=>  (2m + g + 1)^2 >= 4(2g^2 + 1)
    let mut m = 2i128;
    while (2 * m + g + 1).pow(2) < 4 * (2 * g * g + 1) {
        m += 1;
    }
    m as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentData {
    pub l: u32,
    #[serde(serialize_with = "ser_q")]
    pub c: Q,
    #[serde(serialize_with = "ser_q")]
    pub eps: Q,
    #[serde(serialize_with = "ser_q")]
    pub u: Q,
}

fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&if *v.denom() == 1 {
        v.numer().to_string()
    } else {
        v.to_string()
    })
}

impl std::fmt::Display for ExponentData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "l={} c={} eps={} u={}", self.l, self.c, self.eps, self.u)
    }
}

/// The middle exponent `1 + g/(2l+1) - c (m-l)(g+2l+1) / (g (2l+1))`.
fn chain_exponent(g: i128, m: i128, l: i128, c: Q) -> Q {
    Q::from(1) + q(g, 2 * l + 1) - c * q((m - l) * (g + 2 * l + 1), g * (2 * l + 1))
}

/// Exponents of the terms of `R` for the given parameters; `u` is one minus
/// their maximum.
fn remainder_exponents(g: i128, m: i128, l: i128, c: Q, eps: Q) -> Vec<Q> {
    let one = Q::from(1);
    let base = q(g, 2 * l + 1) - c * q(m - l, 2 * l + 1);
    vec![
        one - eps,
        one - c * Q::from(m - 1),
        base + one - c * q(m - l, g),
        base,
    ]
}

fn remainder_exponents_small_m(g: i128, m: i128, l: i128, c: Q, eps: Q) -> Vec<Q> {
    let one = Q::from(1);
    vec![
        one - eps,
        one - c * Q::from(m - 1),
        chain_exponent(g, m, l, c),
    ]
}

/// Checks every inequality the parameters must satisfy, exactly.
pub fn verify_chain(n: u32, g: u32, m: u32, d: &ExponentData) -> bool {
    let (n, g, m, l) = (n as i128, g as i128, m as i128, d.l as i128);
    let one = Q::from(1);
    let zero = Q::from(0);
    l >= 1
        && l < m
        && q(1, m) <= d.c
        && d.c < one - d.eps
        && d.eps > zero
        && d.eps <= q(1, n)
        && chain_exponent(g, m, l, d.c) <= d.c
        && d.u > zero
}

/// `(l, c, eps, u)` for the given degree of the field `n`, polynomial degree
/// `g` and exponent `m`.
pub fn error_exponent(n: u32, g: u32, m: u32) -> Result<ExponentData> {
    if n < 2 || g < 1 {
        return Err(Error::InvalidInput("need n >= 2 and g >= 1".into()));
    }
    let need = mfree_threshold(g);
    if m < need {
        return Err(Error::NoAdmissibleExponent(format!(
            "m = {m} is below the threshold {need} for g = {g}"
        )));
    }
    let (ni, gi, mi) = (n as i128, g as i128, m as i128);
    let out = if mi > gi + 1 {
        let l = mi - gi;
        let c = Q::from(1) - q(5, gi + 10);
        let eps = q(1, ni).min(q(4, gi + 10));
        let worst = remainder_exponents(gi, mi, l, c, eps)
            .into_iter()
            .max()
            .unwrap();
        ExponentData {
            l: l as u32,
            c,
            eps,
            u: Q::from(1) - worst,
        }
    } else {
        let mut found = None;
        for l in 1..mi {
            if Q::from(mi - l) <= q(gi * gi, 2 * l + gi + 1) {
                continue;
            }
            let lower = q(
                gi * (2 * l + 1) + gi * gi,
                (mi - l) * (2 * l + gi + 1) + gi * (2 * l + 1),
            );
            let c = lower.max(q(1, mi));
            if c >= Q::from(1) || q(1, mi - l + 1) > lower.max(q(1, mi)) {
                continue;
            }
            let eps = q(1, ni).min((Q::from(1) - c) / 2);
            let worst = remainder_exponents_small_m(gi, mi, l, c, eps)
                .into_iter()
                .max()
                .unwrap();
            found = Some(ExponentData {
                l: l as u32,
                c,
                eps,
                u: Q::from(1) - worst,
            });
            break;
        }
        found
            .ok_or_else(|| Error::NoAdmissibleExponent(format!("no l fits for g = {g}, m = {m}")))?
    };
    if !verify_chain(n, g, m, &out) {
        return Err(Error::NoAdmissibleExponent(format!(
            "parameters {out} fail the inequality chain"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(mfree_threshold(1), 2);
        assert_eq!(mfree_threshold(2), 2);
        assert_eq!(mfree_threshold(3), 3);
    }

    #[test]
    fn worked_parameters() {
        let d = error_exponent(2, 2, 2).unwrap();
        assert_eq!((d.l, d.c, d.eps, d.u), (1, q(10, 11), q(1, 22), q(1, 22)));
        let d = error_exponent(2, 2, 4).unwrap();
        assert_eq!((d.l, d.c, d.eps, d.u), (2, q(7, 12), q(1, 3), q(1, 3)));
        assert!(matches!(
            error_exponent(2, 2, 1),
            Err(Error::NoAdmissibleExponent(_))
        ));
    }

    #[test]
    fn every_small_case_verifies() {
        for n in 2..=4 {
            for g in 1..=6 {
                for m in mfree_threshold(g)..=g + 3 {
                    let d = error_exponent(n, g, m).unwrap();
                    assert!(verify_chain(n, g, m, &d), "n={n} g={g} m={m}");
                }
            }
        }
    }
}
