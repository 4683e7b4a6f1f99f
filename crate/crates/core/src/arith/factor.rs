//! Rational integer factorization: trial division up to 10^6, then Brent's
//! variant of Pollard rho with deterministic Miller-Rabin certification.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const TRIAL_LIMIT: u64 = 1_000_000;

/// Miller-Rabin with the first 13 prime bases is deterministic below this bound.
const MR_CERTIFIED_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    // double-and-add for wide moduli
    let (mut a, mut b) = (a % m, b % m);
    let mut r = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    r
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let s = a.wrapping_add(b);
    if s < a || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic primality test, certified for `n < 3.3 * 10^24`.
pub fn is_prime(n: u128) -> Result<bool> {
    if n < 2 {
        return Ok(false);
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return Ok(true);
        }
        if n.is_multiple_of(p) {
            return Ok(false);
        }
    }
    if n >= MR_CERTIFIED_BOUND {
        return Err(Error::FactorizationLimit(n));
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's cycle-finding rho; returns a nontrivial factor of the composite `n`.
fn rho(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let (mut g, mut x, mut ys) = (1u128, 0u128, 0u128);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization of `n > 0` as sorted `(prime, exponent)` pairs.
pub fn factorize(n: u128) -> Result<Vec<(u128, u32)>> {
    if n == 0 {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut out: Vec<(u128, u32)> = Vec::new();
    let mut m = n;
    for &p in small_primes() {
        let p = p as u128;
        if p * p > m {
            break;
        }
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if m > 1 {
        let mut stack = vec![m];
        let mut large = Vec::new();
        while let Some(k) = stack.pop() {
            if k == 1 {
                continue;
            }
            let lim = TRIAL_LIMIT as u128;
            if k < lim * lim || is_prime(k)? {
                large.push(k);
            } else {
                let d = rho(k);
                stack.push(d);
                stack.push(k / d);
            }
        }
        large.sort_unstable();
        for p in large {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// True if no prime appears with exponent `>= m`.
pub fn is_m_free_integer(n: u128, m: u32) -> Result<bool> {
    Ok(factorize(n)?.iter().all(|&(_, e)| e < m))
}

/// `floor(sqrt(n))`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_perfect_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n as u128);
        r * r == n as u128
    }
}

/// True if `|d|` has no repeated prime factor (`0` is not squarefree).
pub fn is_squarefree(d: i128) -> Result<bool> {
    if d == 0 {
        return Ok(false);
    }
    is_m_free_integer(d.unsigned_abs(), 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(mut n: u128) -> Vec<(u128, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factors_match_naive() {
        for n in 1..5000u128 {
            assert_eq!(factorize(n).unwrap(), naive(n), "n = {n}");
        }
    }

    #[test]
    fn rho_splits_semiprimes() {
        let p = 1_000_000_007u128;
        let q = 998_244_353u128;
        assert_eq!(factorize(p * q).unwrap(), vec![(q, 1), (p, 1)]);
        assert_eq!(factorize(p * p * 3).unwrap(), vec![(3, 1), (p, 2)]);
        let big = 18_446_744_073_709_551_557u128; // largest prime below 2^64
        assert!(is_prime(big).unwrap());
        assert_eq!(factorize(big * 5).unwrap(), vec![(5, 1), (big, 1)]);
    }

    #[test]
    fn primality_of_carmichael_numbers() {
        for n in [561u128, 1105, 1729, 2465, 2821, 6601, 8911, 3_215_031_751] {
            assert!(!is_prime(n).unwrap());
        }
    }

    #[test]
    fn squarefree_integers() {
        assert!(is_squarefree(-19).unwrap());
        assert!(!is_squarefree(12).unwrap());
        assert!(!is_squarefree(0).unwrap());
        assert!(is_squarefree(1).unwrap());
        assert!(is_m_free_integer(4, 3).unwrap());
    }
}
