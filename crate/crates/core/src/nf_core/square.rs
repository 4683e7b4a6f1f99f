use crate::arith::factor::is_perfect_square;
use crate::arith::fmat;
use crate::error::{Error, Result};

use super::embeddings::BASE_PRECISION;
use super::field::NumberField;
use super::AlgebraicInt;

impl NumberField {
    /// Square root in `O_K` if one exists, found by exhaustive search over
    /// `beta` with `|sigma_i(beta)| <= sqrt|sigma_i(eta)|`.
    pub fn sqrt_in_ok(&self, eta: &[i128]) -> Result<Option<AlgebraicInt>> {
        if self.is_zero(eta) {
            return Err(Error::InvalidInput(
                "zero has no meaningful square test here".into(),
            ));
        }
        let nrm = self.norm(eta);
        if !is_perfect_square(nrm) {
            return Ok(None);
        }
        let sigma = self.embed_sigma(eta, BASE_PRECISION)?;
        // per-coordinate bounds in R^n
        let mut bounds = Vec::with_capacity(self.n);
        for i in 0..self.r {
            let v = sigma.values[i].abs() + sigma.radius[i];
            bounds.push(v.sqrt() * (1.0 + 1e-9) + 1e-9);
        }
        for j in 0..self.s {
            let (re, im) = (
                sigma.values[self.r + 2 * j],
                sigma.values[self.r + 2 * j + 1],
            );
            let rad = sigma.radius[self.r + 2 * j] + sigma.radius[self.r + 2 * j + 1];
            let b = ((re * re + im * im).sqrt() + rad).sqrt() * (1.0 + 1e-9) + 1e-9;
            bounds.push(b);
            bounds.push(b);
        }
        let phi = self.basis_embedding_f64()?;
        let inv = fmat::invert(&phi).ok_or(Error::PrecisionExhausted {
            bits: BASE_PRECISION,
        })?;
        let ranges: Vec<i128> = (0..self.n)
            .map(|k| {
                let s: f64 = (0..self.n).map(|i| bounds[i] * inv[i][k].abs()).sum();
                (s * (1.0 + 1e-9)).ceil() as i128 + 1
            })
            .collect();
        let mut y: Vec<i128> = ranges.iter().map(|r| -r).collect();
        loop {
            if self.mul(&y, &y) == eta {
                let mut root = y.clone();
                // canonical sign: first nonzero coordinate positive
                if root.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                    root = self.neg(&root);
                }
                return Ok(Some(root));
            }
            let mut j = 0;
            loop {
                if j == self.n {
                    return Ok(None);
                }
                y[j] += 1;
                if y[j] <= ranges[j] {
                    break;
                }
                y[j] = -ranges[j];
                j += 1;
            }
        }
    }

    /// `eta` is a square in `K` (equivalently in `O_K`).
    pub fn is_square_in_k(&self, eta: &[i128]) -> Result<bool> {
        Ok(self.sqrt_in_ok(eta)?.is_some())
    }
}
