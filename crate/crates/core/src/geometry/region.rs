use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::interval::from_f64;
use crate::error::{Error, Result};
use crate::nf_core::embeddings::{BASE_PRECISION, MAX_PRECISION};
use crate::nf_core::NumberField;

/// The box `R(x)`: totally positive `alpha` with `|sigma_i(alpha)| <= x_i`.
///
/// `bounds` has one entry per embedding `sigma_1 .. sigma_n`, with conjugate
/// embeddings sharing a bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionBox {
    bounds: Vec<f64>,
    r: usize,
    s: usize,
    volume_param: f64,
}

impl RegionBox {
    pub fn new(bounds: Vec<f64>, signature: (usize, usize)) -> Result<Self> {
        let (r, s) = signature;
        if bounds.len() != r + 2 * s {
            return Err(Error::InvalidInput(format!(
                "box needs {} bounds, got {}",
                r + 2 * s,
                bounds.len()
            )));
        }
        if bounds.iter().any(|&b| !b.is_finite() || b < 1.0) {
            return Err(Error::InvalidInput(
                "box bounds must be finite and at least 1".into(),
            ));
        }
        for i in 0..s {
            if bounds[r + i] != bounds[r + s + i] {
                return Err(Error::InvalidInput(
                    "conjugate embeddings must share a bound".into(),
                ));
            }
        }
        let volume_param = bounds.iter().product();
        Ok(RegionBox {
            bounds,
            r,
            s,
            volume_param,
        })
    }

    /// Box with all `x_i = x^(1/n)`, using an exact integer root when `x` is
    /// a perfect `n`-th power.
    pub fn uniform(x: f64, signature: (usize, usize)) -> Result<Self> {
        let n = signature.0 + 2 * signature.1;
        if !(x >= 1.0) {
            return Err(Error::InvalidInput(
                "volume parameter must be at least 1".into(),
            ));
        }
        let approx = x.powf(1.0 / n as f64);
        let rounded = approx.round();
        let side = if rounded.powi(n as i32) == x {
            rounded
        } else {
            approx
        };
        Self::new(vec![side.max(1.0); n], signature)
    }

    pub fn bounds(&self) -> &[f64] {
        &self.bounds
    }

    /// `x = x_1 ... x_n`.
    pub fn x(&self) -> f64 {
        self.volume_param
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    /// Bound attached to the embedding `sigma_j`, `j < r + s`.
    pub fn embedding_bound(&self, j: usize) -> f64 {
        self.bounds[j]
    }

    /// Each real coordinate interval of the box in `R^n` coordinates.
    pub(crate) fn coordinate_ranges(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.r {
            out.push((0.0, self.bounds[i]));
        }
        for j in 0..self.s {
            let b = self.bounds[self.r + j];
            out.push((-b, b));
            out.push((-b, b));
        }
        out
    }
}

fn rat_of_int(c: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

enum Decision {
    Yes,
    No,
    Unknown,
}

/// Exact membership of `alpha` in `R(x)`.
pub fn in_region(k: &NumberField, alpha: &[i128], bx: &RegionBox) -> Result<bool> {
    let (r, s) = k.signature();
    if bx.signature() != (r, s) {
        return Err(Error::InvalidInput(
            "box signature does not match the field".into(),
        ));
    }
    if k.is_rational(alpha) {
        let c = rat_of_int(alpha[0]);
        for j in 0..r + s {
            let x = from_f64(bx.embedding_bound(j));
            let ok = if j < r {
                c.is_positive() && c <= x
            } else {
                c.abs() <= x
            };
            if !ok {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let emb = k.embeddings(BASE_PRECISION)?;
    let mut pending = Vec::new();
    for j in 0..r + s {
        match decide_f64(
            alpha,
            &emb.omega_f64[j],
            &emb.omega_err[j],
            j < r,
            bx.embedding_bound(j),
        ) {
            Decision::No => return Ok(false),
            Decision::Yes => {}
            Decision::Unknown => pending.push(j),
        }
    }
    for j in pending {
        if !decide_exact(k, alpha, j, j < r, bx.embedding_bound(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn decide_f64(alpha: &[i128], w: &[(f64, f64)], err: &[f64], real: bool, x: f64) -> Decision {
    let (mut re, mut im, mut e, mut mag) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for ((&c, &(wr, wi)), &we) in alpha.iter().zip(w).zip(err) {
        if c == 0 {
            continue;
        }
        let cf = c as f64;
        re += cf * wr;
        im += cf * wi;
        e += cf.abs() * we;
        mag += cf.abs() * (wr.abs() + wi.abs());
    }
    // floating error of the sums, generously
    let margin = e + mag * 1e-13 + 1e-300;
    if real {
        if re + margin <= 0.0 || re - margin > x {
            return Decision::No;
        }
        if re - margin > 0.0 && re + margin <= x {
            return Decision::Yes;
        }
    } else {
        let a = (re * re + im * im).sqrt();
        if a - 2.0 * margin > x {
            return Decision::No;
        }
        if a + 2.0 * margin <= x * (1.0 - 1e-15) {
            return Decision::Yes;
        }
    }
    Decision::Unknown
}

fn decide_exact(k: &NumberField, alpha: &[i128], j: usize, real: bool, x: f64) -> Result<bool> {
    let xq = from_f64(x);
    let mut bits = BASE_PRECISION;
    while bits <= MAX_PRECISION {
        let emb = k.embeddings(bits)?;
        let b = emb.sigma_ball(j, alpha);
        if real {
            let lo = &b.re - &b.rad;
            let hi = &b.re + &b.rad;
            if !hi.is_positive() || lo > xq {
                return Ok(false);
            }
            if lo.is_positive() && hi <= xq {
                return Ok(true);
            }
        } else {
            let c2 = &b.re * &b.re + &b.im * &b.im;
            let outer = &xq + &b.rad;
            if c2 > &outer * &outer {
                return Ok(false);
            }
            let inner = &xq - &b.rad;
            if !inner.is_negative() && c2 <= &inner * &inner {
                return Ok(true);
            }
            // |sigma(alpha)|^2 is the norm for imaginary quadratic fields
            if k.degree() == 2 && k.signature() == (0, 1) {
                return Ok(rat_of_int(k.norm(alpha)) <= &xq * &xq);
            }
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted {
        bits: MAX_PRECISION,
    })
}
