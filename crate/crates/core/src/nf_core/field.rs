use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factor::{factorize, primes_up_to};
use crate::arith::ffpoly::{self, Fp};
use crate::arith::hnf::{det_bareiss, Row};
use crate::arith::zpoly;
use crate::error::{Error, Result};

use super::embeddings::Embeddings;
use super::ideal::IdealLattice;
use super::prime::PrimeIdealData;
use super::AlgebraicInt;

pub type Q = Ratio<i128>;

/// On-disk description of a number field.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(default)]
    pub name: Option<String>,
    /// Defining polynomial, constant term first, monic.
    pub min_poly: Vec<i64>,
    /// Rows express an integral basis in powers of the defining root.
    #[serde(default)]
    pub integral_basis: Option<Vec<Vec<RationalEntry>>>,
    #[serde(default)]
    pub units: Vec<Vec<i64>>,
    /// Named suborders, rows in integral-basis coordinates.
    #[serde(default)]
    pub orders: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalEntry {
    Int(i64),
    Text(String),
}

impl RationalEntry {
    fn parse(&self) -> Result<Q> {
        match self {
            RationalEntry::Int(k) => Ok(Q::from_integer(*k as i128)),
            RationalEntry::Text(s) => {
                let bad = || Error::InvalidField(format!("cannot parse rational {s:?}"));
                let (p, q) = match s.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (s.trim(), "1"),
                };
                let p: i128 = p.parse().map_err(|_| bad())?;
                let q: i128 = q.parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Q::new(p, q))
            }
        }
    }
}

/// A number field `K = Q(theta)` together with an integral basis of `O_K`.
///
/// Elements of `O_K` are integer coordinate vectors on the basis, whose first
/// member is always `1`.
pub struct NumberField {
    pub(crate) name: String,
    pub(crate) min_poly: Vec<i128>,
    pub(crate) n: usize,
    pub(crate) basis: Vec<Vec<Q>>,
    pub(crate) basis_inv: Vec<Vec<Q>>,
    pub(crate) mult: Vec<Vec<Vec<i128>>>,
    pub(crate) traces: Vec<i128>,
    pub(crate) disc: i128,
    pub(crate) r: usize,
    pub(crate) s: usize,
    pub(crate) power_index: u128,
    pub(crate) units: Vec<AlgebraicInt>,
    pub(crate) orders: BTreeMap<String, Vec<Row>>,
    pub(crate) embeddings: Mutex<BTreeMap<u32, Arc<Embeddings>>>,
    pub(crate) primes: Mutex<HashMap<u128, Arc<Vec<PrimeIdealData>>>>,
    pub(crate) prime_powers: Mutex<HashMap<(u128, usize, u32), Arc<IdealLattice>>>,
}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NumberField")
            .field("name", &self.name)
            .field("min_poly", &self.min_poly)
            .field("disc", &self.disc)
            .field("signature", &(self.r, self.s))
            .finish()
    }
}

impl NumberField {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: FieldSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidField(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// Field with the power basis of `min_poly` as integral basis.
    pub fn from_min_poly(min_poly: &[i64]) -> Result<Self> {
        Self::from_spec(&FieldSpec {
            name: None,
            min_poly: min_poly.to_vec(),
            integral_basis: None,
            units: Vec::new(),
            orders: BTreeMap::new(),
        })
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let min_poly: Vec<i128> = spec.min_poly.iter().map(|&c| c as i128).collect();
        let min_poly = zpoly::trim(min_poly);
        let n = match zpoly::degree(&min_poly) {
            Some(d) if d >= 2 => d,
            _ => {
                return Err(Error::InvalidField(
                    "defining polynomial must have degree >= 2".into(),
                ))
            }
        };
        if min_poly[n] != 1 {
            return Err(Error::InvalidField(
                "defining polynomial must be monic".into(),
            ));
        }
        if !is_irreducible(&min_poly)? {
            return Err(Error::InvalidField(
                "defining polynomial is reducible over Q".into(),
            ));
        }

        let power_basis = spec.integral_basis.is_none();
        let basis: Vec<Vec<Q>> = match &spec.integral_basis {
            None => identity(n),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidField(format!(
                        "integral basis must be {n}x{n}"
                    )));
                }
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(RationalEntry::parse)
                            .collect::<Result<Vec<Q>>>()
                    })
                    .collect::<Result<_>>()?
            }
        };
        if basis[0]
            .iter()
            .enumerate()
            .any(|(j, c)| *c != if j == 0 { Q::one() } else { Q::zero() })
        {
            return Err(Error::InvalidField(
                "first integral basis element must be 1".into(),
            ));
        }
        let basis_inv = invert(&basis)
            .ok_or_else(|| Error::InvalidField("integral basis matrix is singular".into()))?;
        for row in &basis_inv {
            if row.iter().any(|c| !c.is_integer()) {
                return Err(Error::InvalidField(
                    "powers of the defining root are not integral combinations of the basis".into(),
                ));
            }
        }

        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = reduce_mod_minpoly(&poly_mul_q(&basis[i], &basis[j]), &min_poly);
                let coords = row_times(&prod, &basis_inv);
                if coords.iter().any(|c| !c.is_integer()) {
                    return Err(Error::InvalidField(
                        "integral basis is not closed under multiplication".into(),
                    ));
                }
                mult[i][j] = coords.iter().map(|c| c.to_integer()).collect();
            }
        }
        let traces: Vec<i128> = (0..n)
            .map(|k| (0..n).map(|i| mult[k][i][i]).sum())
            .collect();
        let trace_form: Vec<Row> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| mult[i][j].iter().zip(&traces).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        let disc = det_bareiss(&trace_form);

        let det_b = det_q(&basis);
        let inv_det = Q::one() / det_b.abs();
        if !inv_det.is_integer() {
            return Err(Error::InvalidField(
                "index of Z[theta] is not an integer".into(),
            ));
        }
        let power_index = inv_det.to_integer() as u128;

        let r = zpoly::count_real_roots(&min_poly);
        let s = (n - r) / 2;

        let mut field = NumberField {
            name: spec
                .name
                .clone()
                .unwrap_or_else(|| format!("Q[x]/{:?}", spec.min_poly)),
            min_poly,
            n,
            basis,
            basis_inv,
            mult,
            traces,
            disc,
            r,
            s,
            power_index,
            units: Vec::new(),
            orders: BTreeMap::new(),
            embeddings: Mutex::new(BTreeMap::new()),
            primes: Mutex::new(HashMap::new()),
            prime_powers: Mutex::new(HashMap::new()),
        };
        field.check_maximal(power_basis)?;

        for u in &spec.units {
            let u: AlgebraicInt = u.iter().map(|&c| c as i128).collect();
            if u.len() != n {
                return Err(Error::InvalidField(format!("unit {u:?} has wrong length")));
            }
            if field.norm(&u).abs() != 1 {
                return Err(Error::InvalidField(format!("{u:?} is not a unit")));
            }
            field.units.push(u);
        }
        for (name, rows) in &spec.orders {
            let rows: Vec<Row> = rows
                .iter()
                .map(|r| r.iter().map(|&c| c as i128).collect())
                .collect();
            field
                .order_from_rows(&rows)
                .map_err(|e| Error::InvalidField(format!("order {name:?}: {e}")))?;
            field.orders.insert(name.clone(), rows);
        }
        Ok(field)
    }

    /// Reject bases that span a non-maximal order.
    fn check_maximal(&self, power_basis: bool) -> Result<()> {
        for (p, e) in factorize(self.disc.unsigned_abs())? {
            if e < 2 {
                continue;
            }
            let maximal = if power_basis {
                dedekind_maximal(&self.min_poly, p as u64)
            } else {
                self.p_maximal_brute(p)?
            };
            if !maximal {
                return Err(Error::InvalidField(format!(
                    "basis is not maximal at {p}; supply an integral basis of O_K"
                )));
            }
        }
        Ok(())
    }

    /// Searches `(c / p)` for integral elements with `c` in `{0..p-1}^n`.
    fn p_maximal_brute(&self, p: u128) -> Result<bool> {
        let total = p.checked_pow(self.n as u32).unwrap_or(u128::MAX);
        if total > super::RESIDUE_CAP {
            return Err(Error::CapExceeded {
                size: total,
                cap: super::RESIDUE_CAP,
            });
        }
        let p = p as i128;
        let mut c = vec![0i128; self.n];
        loop {
            let mut j = 0;
            while j < self.n {
                c[j] += 1;
                if c[j] < p {
                    break;
                }
                c[j] = 0;
                j += 1;
            }
            if j == self.n {
                return Ok(true);
            }
            if self.is_integral_over(&c, p) {
                return Ok(false);
            }
        }
    }

    /// True if `c / d` is an algebraic integer.
    fn is_integral_over(&self, c: &[i128], d: i128) -> bool {
        let m: Vec<Vec<Q>> = self
            .mul_matrix(c)
            .iter()
            .map(|r| r.iter().map(|&x| Q::new(x, d)).collect())
            .collect();
        charpoly(&m).iter().all(|q| q.is_integer())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn min_poly(&self) -> &[i128] {
        &self.min_poly
    }

    /// `(r, s)`: real embeddings and conjugate pairs.
    pub fn signature(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    pub fn disc(&self) -> i128 {
        self.disc
    }

    /// `[O_K : Z[theta]]`.
    pub fn power_index(&self) -> u128 {
        self.power_index
    }

    pub fn integral_basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn units(&self) -> &[AlgebraicInt] {
        &self.units
    }

    pub fn order_names(&self) -> impl Iterator<Item = &str> {
        self.orders.keys().map(String::as_str)
    }

    pub(crate) fn order_rows(&self, name: &str) -> Option<&Vec<Row>> {
        self.orders.get(name)
    }

    /// Coordinates of `theta^j`.
    pub fn theta_power(&self, j: usize) -> AlgebraicInt {
        if j < self.n {
            return self.basis_inv[j].iter().map(|c| c.to_integer()).collect();
        }
        let t = self.theta_power(1);
        let mut acc = self.theta_power(self.n - 1);
        for _ in self.n..=j {
            acc = self.mul(&acc, &t);
        }
        acc
    }

    /// Expression of an element in powers of theta.
    pub fn to_power_basis(&self, a: &[i128]) -> Vec<Q> {
        let row: Vec<Q> = a.iter().map(|&c| Q::from_integer(c)).collect();
        row_times(&row, &self.basis)
    }

    /// Inverse of `to_power_basis`; `None` if the element is not in `O_K`.
    pub fn from_power_basis(&self, q: &[Q]) -> Option<AlgebraicInt> {
        let coords = row_times(q, &self.basis_inv);
        coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

pub(crate) fn row_times(v: &[Q], m: &[Vec<Q>]) -> Vec<Q> {
    let n = m[0].len();
    let mut out = vec![Q::zero(); n];
    for (c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += *c * *x;
        }
    }
    out
}

fn poly_mul_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    out
}

fn reduce_mod_minpoly(a: &[Q], f: &[i128]) -> Vec<Q> {
    let n = f.len() - 1;
    let mut r = a.to_vec();
    for k in (n..r.len()).rev() {
        let c = r[k];
        if c.is_zero() {
            continue;
        }
        for j in 0..=n {
            r[k - n + j] -= c * Q::from_integer(f[j]);
        }
    }
    r.resize(n, Q::zero());
    r
}

/// Gauss-Jordan inverse of a square rational matrix.
pub(crate) fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let inv = Q::one() / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `x * M = v` over the rationals.
pub(crate) fn solve_left(m: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    invert(m).map(|inv| row_times(v, &inv))
}

fn det_q(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            if f.is_zero() {
                continue;
            }
            let pivot_row = a[col].clone();
            for (x, y) in a[i].iter_mut().zip(pivot_row) {
                *x -= f * y;
            }
        }
    }
    det
}

/// Characteristic polynomial coefficients `c_0..c_{n-1}` (monic, leading
/// coefficient omitted) by Faddeev-LeVerrier.
pub(crate) fn charpoly(m: &[Vec<Q>]) -> Vec<Q> {
    let n = m.len();
    let mut coeffs = vec![Q::zero(); n];
    let mut mk = identity(n);
    for k in 1..=n {
        let am: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Q::zero(), |acc, t| acc + m[i][t] * mk[t][j]))
                    .collect()
            })
            .collect();
        let tr = (0..n).fold(Q::zero(), |acc, i| acc + am[i][i]);
        let c = -tr / Q::from_integer(k as i128);
        coeffs[n - k] = c;
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    coeffs
}

/// Dedekind's criterion: is `Z[theta]` maximal at `p`?
fn dedekind_maximal(f: &[i128], p: u64) -> bool {
    let fp = Fp::new(p);
    let fbar: Vec<u64> = ffpoly::trim(&fp, f.iter().map(|&c| fp.reduce(c)).collect());
    let facs = ffpoly::factor_fp(&fp, &fbar);
    let mut g = vec![1u64];
    for (gi, _) in &facs {
        g = ffpoly::mul(&fp, &g, gi);
    }
    let (h, rem) = ffpoly::divrem(&fp, &fbar, &g);
    debug_assert!(rem.is_empty());
    let lift = |a: &[u64]| -> Vec<i128> { a.iter().map(|&c| c as i128).collect() };
    let gh = zpoly::mul(&lift(&g), &lift(&h));
    let len = gh.len().max(f.len());
    let mut big_f = Vec::with_capacity(len);
    for k in 0..len {
        let d = f.get(k).copied().unwrap_or(0) - gh.get(k).copied().unwrap_or(0);
        debug_assert_eq!(d % p as i128, 0);
        big_f.push(d / p as i128);
    }
    let fbar2 = ffpoly::trim(&fp, big_f.iter().map(|&c| fp.reduce(c)).collect());
    let common = ffpoly::gcd(&fp, &ffpoly::gcd(&fp, &fbar2, &g), &h);
    ffpoly::deg(&common) == Some(0)
}

/// Irreducibility over Q of a monic integer polynomial.
pub fn is_irreducible(f: &[i128]) -> Result<bool> {
    let n = zpoly::degree(f).unwrap_or(0);
    if n <= 1 {
        return Ok(n == 1);
    }
    // possible degrees of a rational factor, narrowed by factorizations mod p
    let mut possible: Vec<bool> = vec![true; n + 1];
    let mut good = 0;
    for p in primes_up_to(2000) {
        let fp = Fp::new(p);
        let fbar: Vec<u64> = ffpoly::trim(&fp, f.iter().map(|&c| fp.reduce(c)).collect());
        if ffpoly::deg(&fbar) != Some(n) {
            continue;
        }
        let d = ffpoly::derivative(&fp, &fbar);
        if ffpoly::deg(&ffpoly::gcd(&fp, &fbar, &d)) != Some(0) {
            continue;
        }
        let facs = ffpoly::factor_fp(&fp, &fbar);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (g, _) in &facs {
            let dg = g.len() - 1;
            for k in (dg..=n).rev() {
                if sums[k - dg] {
                    sums[k] = true;
                }
            }
        }
        for k in 0..=n {
            possible[k] &= sums[k];
        }
        if (1..n).all(|k| !possible[k]) {
            return Ok(true);
        }
        good += 1;
        if good >= 40 {
            break;
        }
    }
    // exhaustive search over subsets of approximate roots
    let roots = zpoly::complex_roots_f64(f);
    for k in 1..=n / 2 {
        if !possible[k] {
            continue;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut prod = vec![num_complex::Complex64::new(1.0, 0.0)];
            for &i in &idx {
                let mut next = vec![num_complex::Complex64::new(0.0, 0.0); prod.len() + 1];
                for (j, c) in prod.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] -= c * roots[i];
                }
                prod = next;
            }
            if prod.iter().all(|c| c.im.abs() < 1e-6 * (1.0 + c.re.abs())) {
                let cand: Vec<i128> = prod.iter().map(|c| c.re.round() as i128).collect();
                if zpoly::divides_monic(&cand, f) {
                    return Ok(false);
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(true)
}

/// Advance `idx` to the next increasing k-subset of `0..n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
