//! Arithmetic of algebraic integers in integral-basis coordinates.

use num_traits::{One, Zero};

use crate::arith::hnf::{det_bareiss, Row};

use super::field::{solve_left, NumberField, Q};
use super::AlgebraicInt;

impl NumberField {
    pub fn zero(&self) -> AlgebraicInt {
        vec![0; self.n]
    }

    pub fn one(&self) -> AlgebraicInt {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i128) -> AlgebraicInt {
        let mut v = vec![0; self.n];
        v[0] = k;
        v
    }

    /// The defining root `theta`.
    pub fn theta(&self) -> AlgebraicInt {
        self.theta_power(1)
    }

    pub fn is_zero(&self, a: &[i128]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// True if the element lies in `Z`.
    pub fn is_rational(&self, a: &[i128]) -> bool {
        a[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[i128], b: &[i128]) -> AlgebraicInt {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[i128], b: &[i128]) -> AlgebraicInt {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &[i128]) -> AlgebraicInt {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &[i128], k: i128) -> AlgebraicInt {
        a.iter().map(|x| x * k).collect()
    }

    pub fn mul(&self, a: &[i128], b: &[i128]) -> AlgebraicInt {
        let mut out = vec![0i128; self.n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y;
                for (o, &t) in out.iter_mut().zip(&self.mult[i][j]) {
                    *o += xy * t;
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[i128], mut e: u32) -> AlgebraicInt {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Rows are the coordinates of `a * omega_i`.
    pub fn mul_matrix(&self, a: &[i128]) -> Vec<Row> {
        (0..self.n)
            .map(|i| {
                let mut e = vec![0; self.n];
                e[i] = 1;
                self.mul(a, &e)
            })
            .collect()
    }

    /// Exact norm as the determinant of the multiplication matrix.
    pub fn norm(&self, a: &[i128]) -> i128 {
        det_bareiss(&self.mul_matrix(a))
    }

    pub fn trace(&self, a: &[i128]) -> i128 {
        a.iter().zip(&self.traces).map(|(x, t)| x * t).sum()
    }

    /// `a / b` when the quotient lies in `O_K`.
    pub fn div_exact(&self, a: &[i128], b: &[i128]) -> Option<AlgebraicInt> {
        if self.is_zero(b) {
            return None;
        }
        let m: Vec<Vec<Q>> = self
            .mul_matrix(b)
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        let v: Vec<Q> = a.iter().map(|&x| Q::from_integer(x)).collect();
        let x = solve_left(&m, &v)?;
        x.iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Inverse in `O_K`; `None` for non-units.
    pub fn inverse(&self, a: &[i128]) -> Option<AlgebraicInt> {
        self.div_exact(&self.one(), a)
    }

    pub fn is_unit(&self, a: &[i128]) -> bool {
        !self.is_zero(a) && self.norm(a).abs() == 1
    }

    /// Evaluate `c_0 + c_1 x + ... + c_g x^g` by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[AlgebraicInt], x: &[i128]) -> AlgebraicInt {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// Derivative of a polynomial with coefficients in `O_K`.
    pub fn poly_derivative(&self, coeffs: &[AlgebraicInt]) -> Vec<AlgebraicInt> {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.scale(c, i as i128))
            .collect()
    }

    /// Human-readable form in powers of theta.
    pub fn format_element(&self, a: &[i128]) -> String {
        let q = self.to_power_basis(a);
        let mut parts = Vec::new();
        for (j, c) in q.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_integer() {
                c.to_integer().to_string()
            } else {
                format!("({}/{})", c.numer(), c.denom())
            };
            parts.push(match j {
                0 => coeff,
                _ if c.is_one() => power_name(j),
                _ => format!("{coeff}*{}", power_name(j)),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

fn power_name(j: usize) -> String {
    if j == 1 {
        "t".into()
    } else {
        format!("t^{j}")
    }
}
