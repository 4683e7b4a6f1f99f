//! Certified complex embeddings.
//!
//! Roots of the defining polynomial are found in floating point, refined by
//! Newton iteration over dyadic rationals, and certified by disjoint discs of
//! radius `n |p(z)| / |p'(z)|`, each of which then holds exactly one root.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::interval::{dyadic_ceil, dyadic_round, from_f64, sqrt_upper, to_f64};
use crate::arith::zpoly;
use crate::error::{Error, Result};

use super::field::NumberField;

/// Initial working precision in bits.
pub const BASE_PRECISION: u32 = 64;
/// Largest precision attempted before giving up.
pub const MAX_PRECISION: u32 = 4096;

/// A complex disc `center + rad * D` with rational data.
#[derive(Clone, Debug)]
pub struct Ball {
    pub re: BigRational,
    pub im: BigRational,
    pub rad: BigRational,
}

impl Ball {
    pub fn exact(re: BigRational, im: BigRational) -> Self {
        Ball {
            re,
            im,
            rad: BigRational::zero(),
        }
    }

    /// Upper bound on `|center|`.
    fn abs_bound(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }

    pub fn add(&self, o: &Ball) -> Ball {
        Ball {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Ball {
        Ball {
            re: &self.re * q,
            im: &self.im * q,
            rad: &self.rad * q.abs(),
        }
    }

    /// Product, rounded to `bits`.
    pub fn mul(&self, o: &Ball, bits: u32) -> Ball {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let rad = self.abs_bound() * &o.rad + o.abs_bound() * &self.rad + &self.rad * &o.rad;
        Ball { re, im, rad }.rounded(bits)
    }

    /// Round the center to a dyadic grid, absorbing the error in the radius.
    pub fn rounded(self, bits: u32) -> Ball {
        let b = bits as u64;
        let re = dyadic_round(&self.re, b);
        let im = dyadic_round(&self.im, b);
        let err = (&re - &self.re).abs() + (&im - &self.im).abs();
        Ball {
            re,
            im,
            rad: dyadic_ceil(&(self.rad + err), b),
        }
    }

    pub fn is_real_center(&self) -> bool {
        self.im.is_zero()
    }
}

/// Embedding data at one precision: the roots and the images of the integral
/// basis under each embedding `sigma_1 .. sigma_{r+s}`.
#[derive(Debug)]
pub struct Embeddings {
    pub bits: u32,
    pub roots: Vec<Ball>,
    /// `omega[i][k] = sigma_i(omega_k)`.
    pub omega: Vec<Vec<Ball>>,
    /// Floating approximations of `omega` with rigorous absolute error bounds.
    pub omega_f64: Vec<Vec<(f64, f64)>>,
    pub omega_err: Vec<Vec<f64>>,
}

fn q(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn c_mul(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn c_eval(p: &[i128], z: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    let mut acc = (BigRational::zero(), BigRational::zero());
    for &c in p.iter().rev() {
        acc = c_mul(&acc, z);
        acc.0 += q(c);
    }
    acc
}

fn abs2(z: &(BigRational, BigRational)) -> BigRational {
    &z.0 * &z.0 + &z.1 * &z.1
}

/// Newton refinement of one root at `bits`, followed by its certified radius.
fn refine_root(f: &[i128], df: &[i128], re0: f64, im0: f64, real: bool, bits: u32) -> Option<Ball> {
    let b = bits as u64;
    let mut z = (
        from_f64(re0),
        if real {
            BigRational::zero()
        } else {
            from_f64(im0)
        },
    );
    let iters = 8 + (bits / 32).ilog2() as usize * 2;
    for _ in 0..iters {
        let pz = c_eval(f, &z);
        let dz = c_eval(df, &z);
        let d2 = abs2(&dz);
        if d2.is_zero() {
            return None;
        }
        // step = p / p'
        let num = (&pz.0 * &dz.0 + &pz.1 * &dz.1, &pz.1 * &dz.0 - &pz.0 * &dz.1);
        let step = (num.0 / &d2, num.1 / &d2);
        z = (
            dyadic_round(&(&z.0 - &step.0), b),
            dyadic_round(&(&z.1 - &step.1), b),
        );
        if real {
            z.1 = BigRational::zero();
        }
    }
    let pz = c_eval(f, &z);
    let dz = c_eval(df, &z);
    let d2 = abs2(&dz);
    if d2.is_zero() {
        return None;
    }
    let n = q((f.len() - 1) as i128);
    let ratio2 = abs2(&pz) / d2;
    let rad = if real {
        // real center: exact rational ratio
        let r = (&pz.0 / &dz.0).abs() * &n;
        dyadic_ceil(&r, b)
    } else {
        sqrt_upper(&(ratio2 * &n * &n), b)
    };
    Some(Ball {
        re: z.0,
        im: z.1,
        rad,
    })
}

fn discs_disjoint(a: &Ball, b: &Ball) -> bool {
    let d2 = (&a.re - &b.re) * (&a.re - &b.re) + (&a.im - &b.im) * (&a.im - &b.im);
    let r = &a.rad + &b.rad;
    d2 > &r * &r
}

impl Embeddings {
    fn compute(k: &NumberField, bits: u32) -> Option<Embeddings> {
        let f = &k.min_poly;
        let df = zpoly::derivative(f);
        let mut approx = zpoly::complex_roots_f64(f);
        approx.sort_by(|a, b| {
            a.im.abs()
                .total_cmp(&b.im.abs())
                .then(a.re.total_cmp(&b.re))
        });
        let (r, s) = (k.r, k.s);
        let mut reals: Vec<f64> = approx[..r].iter().map(|z| z.re).collect();
        reals.sort_by(|a, b| b.total_cmp(a));
        let mut cplx: Vec<(f64, f64)> = approx[r..]
            .iter()
            .filter(|z| z.im > 0.0)
            .map(|z| (z.re, z.im))
            .collect();
        if cplx.len() != s {
            return None;
        }
        cplx.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut roots = Vec::with_capacity(r + s);
        for &x in &reals {
            roots.push(refine_root(f, &df, x, 0.0, true, bits)?);
        }
        for &(x, y) in &cplx {
            roots.push(refine_root(f, &df, x, y, false, bits)?);
        }
        // certify: all n discs, conjugates included, pairwise disjoint
        let mut all: Vec<Ball> = roots.clone();
        for z in &roots[r..] {
            all.push(Ball {
                re: z.re.clone(),
                im: -z.im.clone(),
                rad: z.rad.clone(),
            });
        }
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if !discs_disjoint(&all[i], &all[j]) {
                    return None;
                }
            }
        }
        let omega: Vec<Vec<Ball>> = roots
            .iter()
            .map(|z| {
                let mut pows = vec![Ball::exact(BigRational::one(), BigRational::zero())];
                for j in 1..k.n {
                    let next = pows[j - 1].mul(z, bits);
                    pows.push(next);
                }
                k.basis
                    .iter()
                    .map(|row| {
                        let mut acc = Ball::exact(BigRational::zero(), BigRational::zero());
                        for (c, pw) in row.iter().zip(&pows) {
                            if !c.is_zero() {
                                let cq = BigRational::new(
                                    BigInt::from(*c.numer()),
                                    BigInt::from(*c.denom()),
                                );
                                acc = acc.add(&pw.scale(&cq));
                            }
                        }
                        acc.rounded(bits)
                    })
                    .collect()
            })
            .collect();
        let mut omega_f64 = Vec::new();
        let mut omega_err = Vec::new();
        for row in &omega {
            let mut vals = Vec::new();
            let mut errs = Vec::new();
            for b in row {
                let (re, im) = (to_f64(&b.re), to_f64(&b.im));
                let conv = (re.abs() + im.abs()) * 2.3e-16;
                errs.push(to_f64(&b.rad) * (1.0 + 1e-12) + conv + f64::MIN_POSITIVE);
                vals.push((re, im));
            }
            omega_f64.push(vals);
            omega_err.push(errs);
        }
        Some(Embeddings {
            bits,
            roots,
            omega,
            omega_f64,
            omega_err,
        })
    }

    /// Ball enclosing `sigma_i(a)`.
    pub fn sigma_ball(&self, i: usize, a: &[i128]) -> Ball {
        let mut acc = Ball::exact(BigRational::zero(), BigRational::zero());
        for (&c, w) in a.iter().zip(&self.omega[i]) {
            if c != 0 {
                acc = acc.add(&w.scale(&q(c)));
            }
        }
        acc
    }
}

/// `sigma(a)` as a real vector (real embeddings, then `(Re, Im)` pairs) with
/// a componentwise rigorous error radius.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaVector {
    pub values: Vec<f64>,
    pub radius: Vec<f64>,
}

impl NumberField {
    /// Embedding data at `bits` of precision, cached.
    pub fn embeddings(&self, bits: u32) -> Result<Arc<Embeddings>> {
        let mut bits = bits.max(BASE_PRECISION);
        if let Some((_, e)) = self.embeddings.lock().unwrap().range(bits..).next() {
            return Ok(e.clone());
        }
        while bits <= MAX_PRECISION {
            if let Some(e) = Embeddings::compute(self, bits) {
                let e = Arc::new(e);
                self.embeddings.lock().unwrap().insert(bits, e.clone());
                return Ok(e);
            }
            bits *= 2;
        }
        Err(Error::PrecisionExhausted {
            bits: MAX_PRECISION,
        })
    }

    /// Standard embedding into `R^n`.
    pub fn embed_sigma(&self, a: &[i128], bits: u32) -> Result<SigmaVector> {
        let e = self.embeddings(bits)?;
        let mut values = Vec::with_capacity(self.n);
        let mut radius = Vec::with_capacity(self.n);
        let mut push = |x: &BigRational, rad: &BigRational| {
            let v = to_f64(x);
            values.push(v);
            radius.push(to_f64(rad) * (1.0 + 1e-12) + v.abs() * 2.3e-16);
        };
        for i in 0..self.r {
            let b = e.sigma_ball(i, a);
            push(&b.re, &b.rad);
        }
        for i in self.r..self.r + self.s {
            let b = e.sigma_ball(i, a);
            push(&b.re, &b.rad);
            push(&b.im, &b.rad);
        }
        Ok(SigmaVector { values, radius })
    }

    /// Floating images of the integral basis: row `k` is `sigma(omega_k)` in
    /// `R^n` coordinates.
    pub fn basis_embedding_f64(&self) -> Result<Vec<Vec<f64>>> {
        let e = self.embeddings(BASE_PRECISION)?;
        Ok((0..self.n)
            .map(|k| {
                let mut row = Vec::with_capacity(self.n);
                for i in 0..self.r {
                    row.push(e.omega_f64[i][k].0);
                }
                for i in self.r..self.r + self.s {
                    row.push(e.omega_f64[i][k].0);
                    row.push(e.omega_f64[i][k].1);
                }
                row
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use crate::fields;
    use crate::nf_core::NumberField;

    #[test]
    fn golden_embedding() {
        let k = fields::golden();
        let s = k.embed_sigma(&k.one(), 64).unwrap();
        assert_eq!(s.values, vec![1.0, 1.0]);
        let t = k.embed_sigma(&k.theta(), 64).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((t.values[0] - phi).abs() < 1e-15);
        assert!((t.values[1] - (1.0 - phi)).abs() < 1e-15);
        assert!(t.radius.iter().all(|&r| r < 1e-15));
    }

    #[test]
    fn mixed_signature() {
        let k = NumberField::from_min_poly(&[-2, 0, 0, 1]).unwrap();
        let s = k.embed_sigma(&k.one(), 64).unwrap();
        assert_eq!(s.values, vec![1.0, 1.0, 0.0]);
        let t = k.embed_sigma(&k.theta(), 64).unwrap();
        let c = 2f64.cbrt();
        assert!((t.values[0] - c).abs() < 1e-14);
        assert!((t.values[1] + c / 2.0).abs() < 1e-14);
        assert!((t.values[2] - c * 3f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn high_precision_radius_shrinks() {
        let k = fields::golden();
        let e = k.embeddings(256).unwrap();
        assert!(e
            .roots
            .iter()
            .all(|b| crate::arith::interval::to_f64(&b.rad) < 1e-60));
    }
}
