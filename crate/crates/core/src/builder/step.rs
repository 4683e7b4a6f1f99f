//! One quadratic step `K(alpha)` with `alpha^2 - omega alpha + eta = 0`.

use num_integer::Integer;
use serde::Serialize;

use crate::density::prime_label;
use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, IdealLattice, NumberField};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStep {
    pub omega: AlgebraicInt,
    pub eta: AlgebraicInt,
    /// `omega^2 - 4 eta`.
    pub disc_element: AlgebraicInt,
    pub disc_ideal: IdealLattice,
    pub disc_element_norm: i128,
    /// Coefficients `[eta, -omega, 1]` of the minimal polynomial of `alpha`.
    pub alpha_minpoly: Vec<AlgebraicInt>,
    /// Primes dividing the discriminant with their exponent in the relative
    /// discriminant.
    pub ramified: Vec<(String, u32)>,
}

/// Exponent of `P` in the discriminant of `K(beta^(1/r))`, where `p` is the
/// residue characteristic of `P`. Requires `p` not to divide
/// `gcd(r, v_P(beta))`.
pub fn llorente_nart_valuation(r: u32, v_p_of_r: u32, v_p_of_beta: u32, p: u128) -> Result<u32> {
    if r < 2 {
        return Err(Error::InvalidInput("r must be at least 2".into()));
    }
    let g = r.gcd(&v_p_of_beta);
    if (g as u128).is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "residue characteristic {p} divides gcd(r, v(beta)) = {g}"
        )));
    }
    Ok(r * v_p_of_r + r - g)
}

/// Checks the hypotheses on `omega^2 - 4 eta` and records its
/// factorization.
pub fn quadratic_step(k: &NumberField, omega: &[i128], eta: &[i128]) -> Result<TowerStep> {
    if !k.is_unit(eta) {
        return Err(Error::Precondition("eta must be a unit".into()));
    }
    let d = k.sub(&k.mul(omega, omega), &k.scale(eta, 4));
    if k.is_zero(&d) || k.is_square_in_k(&d)? {
        return Err(Error::Precondition(
            "omega^2 - 4 eta is a square, so the polynomial is reducible".into(),
        ));
    }
    if k.primes_above(2)?.iter().any(|pr| pr.contains(&d)) {
        return Err(Error::Precondition(
            "omega^2 - 4 eta is not coprime to 2".into(),
        ));
    }
    let facs = k.factor_element(&d)?;
    if facs.iter().any(|(_, e)| *e > 1) {
        return Err(Error::Precondition(
            "omega^2 - 4 eta is not squarefree".into(),
        ));
    }
    let mut ramified = Vec::with_capacity(facs.len());
    for (pr, e) in &facs {
        let v_two = k.valuation(&k.from_int(2), pr);
        ramified.push((
            prime_label(pr),
            llorente_nart_valuation(2, v_two, *e, pr.p)?,
        ));
    }
    Ok(TowerStep {
        omega: omega.to_vec(),
        eta: eta.to_vec(),
        disc_ideal: k.principal_ideal(&d)?,
        disc_element_norm: k.norm(&d),
        disc_element: d,
        alpha_minpoly: vec![eta.to_vec(), k.neg(omega), k.one()],
        ramified,
    })
}

impl TowerStep {
    /// A step record for `(omega, eta)` without the hypothesis checks, for
    /// re-verifying towers read from disk.
    pub fn unchecked(k: &NumberField, omega: &[i128], eta: &[i128]) -> Result<TowerStep> {
        let d = k.sub(&k.mul(omega, omega), &k.scale(eta, 4));
        Ok(TowerStep {
            omega: omega.to_vec(),
            eta: eta.to_vec(),
            disc_ideal: k.principal_ideal(&d)?,
            disc_element_norm: k.norm(&d),
            disc_element: d,
            alpha_minpoly: vec![eta.to_vec(), k.neg(omega), k.one()],
            ramified: Vec::new(),
        })
    }
}
