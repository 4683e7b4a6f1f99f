//! Dense polynomials over the integers and rationals, constant term first.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub fn trim(mut a: Vec<i128>) -> Vec<i128> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[i128]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn derivative(a: &[i128]) -> Vec<i128> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i128)
            .collect(),
    )
}

/// Quotient and remainder by a monic divisor.
pub fn divrem_monic(a: &[i128], b: &[i128]) -> (Vec<i128>, Vec<i128>) {
    let db = degree(b).expect("nonzero divisor");
    assert_eq!(b[db], 1, "divisor must be monic");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0i128; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k];
        if c != 0 {
            q[k - db] = c;
            for (j, &bj) in b.iter().enumerate().take(db + 1) {
                r[k - db + j] -= c * bj;
            }
        }
    }
    (trim(q), trim(r))
}

/// Exact division test by a monic polynomial.
pub fn divides_monic(b: &[i128], a: &[i128]) -> bool {
    divrem_monic(a, b).1.is_empty()
}

pub fn to_rational(a: &[i128]) -> Vec<BigRational> {
    a.iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

fn rtrim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rrem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = rtrim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let k = r.len() - 1;
        let c = &r[k] / &b[db];
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k - db + j] -= t;
        }
        r = rtrim(r);
    }
    r
}

pub fn eval_rational(a: &[BigRational], x: &BigRational) -> BigRational {
    a.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Number of distinct real roots of a squarefree integer polynomial, by a
/// Sturm sequence evaluated at plus and minus infinity.
pub fn count_real_roots(a: &[i128]) -> usize {
    let p0 = to_rational(&trim(a.to_vec()));
    let p1 = to_rational(&derivative(a));
    let mut seq = vec![p0, p1];
    loop {
        let k = seq.len();
        if seq[k - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = rrem(&seq[k - 2], &seq[k - 1]);
        let neg: Vec<BigRational> = r.into_iter().map(|c| -c).collect();
        if neg.is_empty() {
            break;
        }
        seq.push(neg);
    }
    let sign_changes = |at_pos: bool| {
        let signs: Vec<bool> = seq
            .iter()
            .map(|p| {
                let lead_pos = p.last().unwrap().is_positive();
                let odd = (p.len() - 1) % 2 == 1;
                if at_pos || !odd {
                    lead_pos
                } else {
                    !lead_pos
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    sign_changes(false) - sign_changes(true)
}

/// All complex roots of a monic integer polynomial by Aberth iteration.
/// Approximate only; callers certify the result.
pub fn complex_roots_f64(a: &[i128]) -> Vec<Complex64> {
    let a = trim(a.to_vec());
    let n = a.len() - 1;
    let coeff: Vec<Complex64> = a.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
    let dcoeff: Vec<Complex64> = (1..=n)
        .map(|i| coeff[i] * Complex64::new(i as f64, 0.0))
        .collect();
    let lead = a[n] as f64;
    let bound = 1.0
        + a[..n]
            .iter()
            .map(|&c| (c as f64 / lead).abs())
            .fold(0.0, f64::max);
    let horner = |c: &[Complex64], z: Complex64| {
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &x| acc * z + x)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, t)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let p = horner(&coeff, z[i]);
            let dp = horner(&dcoeff, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_sturm() {
        let f = vec![-1, -1, 1];
        assert_eq!(count_real_roots(&f), 2);
        assert_eq!(count_real_roots(&[1, 0, 1]), 0);
        assert_eq!(count_real_roots(&[-2, 0, 0, 1]), 1);
        let g = mul(&[1, 1], &[-3, 0, 1]);
        assert!(divides_monic(&[1, 1], &g));
        assert!(!divides_monic(&[2, 1], &g));
        assert_eq!(divrem_monic(&g, &[1, 1]).0, vec![-3, 0, 1]);
    }

    #[test]
    fn aberth_finds_golden_ratio() {
        let mut roots: Vec<f64> = complex_roots_f64(&[-1, -1, 1])
            .iter()
            .map(|z| z.re)
            .collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[1] - 1.618_033_988_749_895).abs() < 1e-12);
        assert!((roots[0] + 0.618_033_988_749_895).abs() < 1e-12);
    }
}
