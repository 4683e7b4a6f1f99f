use serde::Serialize;

use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, NumberField, SubOrder};

/// How irreducibility over `O_K` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Irreducibility {
    /// Linear, or quadratic with a non-square discriminant.
    Proved,
    /// Degree above 2; taken on trust from the caller.
    Asserted,
}

/// A polynomial `c_0 + c_1 X + ... + c_g X^g` over `O_K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SievePolynomial {
    coeffs: Vec<AlgebraicInt>,
    irreducibility: Irreducibility,
}

impl SievePolynomial {
    /// Checks the degree and, for `g <= 2`, irreducibility.
    pub fn new(k: &NumberField, coeffs: Vec<AlgebraicInt>) -> Result<Self> {
        let n = k.degree();
        if coeffs.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidInput(
                "coefficient has the wrong length".into(),
            ));
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput(
                "polynomial must have degree at least 1".into(),
            ));
        }
        let irreducibility = match coeffs.len() - 1 {
            1 => Irreducibility::Proved,
            2 => {
                let disc = k.sub(
                    &k.mul(&coeffs[1], &coeffs[1]),
                    &k.scale(&k.mul(&coeffs[0], &coeffs[2]), 4),
                );
                if k.is_zero(&disc) || k.is_square_in_k(&disc)? {
                    return Err(Error::InvalidInput(
                        "quadratic has a root in the field".into(),
                    ));
                }
                Irreducibility::Proved
            }
            _ => {
                return Err(Error::Precondition(
                    "irreducibility above degree 2 must be asserted explicitly".into(),
                ))
            }
        };
        Ok(SievePolynomial {
            coeffs,
            irreducibility,
        })
    }

    /// Accepts any degree, recording irreducibility as asserted above 2.
    pub fn assume_irreducible(k: &NumberField, coeffs: Vec<AlgebraicInt>) -> Result<Self> {
        match coeffs.iter().rposition(|c| !k.is_zero(c)) {
            Some(d) if d > 2 => {
                let mut coeffs = coeffs;
                coeffs.truncate(d + 1);
                if coeffs.iter().any(|c| c.len() != k.degree()) {
                    return Err(Error::InvalidInput(
                        "coefficient has the wrong length".into(),
                    ));
                }
                Ok(SievePolynomial {
                    coeffs,
                    irreducibility: Irreducibility::Asserted,
                })
            }
            _ => Self::new(k, coeffs),
        }
    }

    /// `X^2 - 4 eta`.
    pub fn x2_minus_4(k: &NumberField, eta: &[i128]) -> Result<Self> {
        Self::new(k, vec![k.scale(eta, -4), k.zero(), k.one()])
    }

    pub fn coeffs(&self) -> &[AlgebraicInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn leading(&self) -> &AlgebraicInt {
        self.coeffs.last().unwrap()
    }

    pub fn eval(&self, k: &NumberField, x: &[i128]) -> AlgebraicInt {
        k.eval_poly(&self.coeffs, x)
    }

    pub fn derivative(&self, k: &NumberField) -> Vec<AlgebraicInt> {
        k.poly_derivative(&self.coeffs)
    }

    pub fn has_coefficients_in(&self, o: &SubOrder) -> bool {
        self.coeffs.iter().all(|c| o.contains(c))
    }

    /// Discriminant for `g <= 2`; `None` above.
    pub fn discriminant(&self, k: &NumberField) -> Option<AlgebraicInt> {
        match self.degree() {
            1 => Some(k.one()),
            2 => {
                let c = &self.coeffs;
                Some(k.sub(&k.mul(&c[1], &c[1]), &k.scale(&k.mul(&c[0], &c[2]), 4)))
            }
            _ => None,
        }
    }

    pub fn format(&self, k: &NumberField) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let c = format!("({})", k.format_element(c));
            parts.push(match i {
                0 => c,
                1 => format!("{c}*X"),
                _ => format!("{c}*X^{i}"),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn quadratic_irreducibility() {
        let k = fields::golden();
        assert!(SievePolynomial::x2_minus_4(&k, &k.scale(&k.theta(), 1)).is_ok());
        // X^2 - 4 has the root 2
        assert!(SievePolynomial::x2_minus_4(&k, &k.one()).is_err());
        // X^2 - theta^2
        let t2 = k.mul(&k.theta(), &k.theta());
        assert!(SievePolynomial::new(&k, vec![k.neg(&t2), k.zero(), k.one()]).is_err());
    }
}
