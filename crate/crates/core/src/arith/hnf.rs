//! Integer lattices in row Hermite normal form.
//!
//! A lattice is stored by the nonzero rows of its row-echelon HNF: pivots are
//! positive and strictly increase in column, and every entry above a pivot
//! lies in `[0, pivot)`. For full-rank lattices this is an upper triangular
//! `n x n` matrix and is a canonical representative.

use std::cmp::Ordering;

pub type Row = Vec<i128>;

/// Row HNF of the lattice spanned by `gens` in `Z^ncols`.
pub fn hnf(gens: &[Row], ncols: usize) -> Vec<Row> {
    let mut m: Vec<Row> = gens
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    echelonize(&mut m, ncols, None);
    m
}

/// Row HNF when `modulus * Z^ncols` is known to lie inside the lattice.
/// Entries stay bounded by the modulus throughout.
pub fn hnf_modular(gens: &[Row], ncols: usize, modulus: i128) -> Vec<Row> {
    assert!(modulus > 0);
    let mut m: Vec<Row> = gens
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(modulus)).collect::<Row>())
        .filter(|r: &Row| r.iter().any(|&x| x != 0))
        .collect();
    for j in 0..ncols {
        let mut e = vec![0; ncols];
        e[j] = modulus;
        m.push(e);
    }
    echelonize(&mut m, ncols, Some(modulus));
    m
}

fn echelonize(m: &mut Vec<Row>, ncols: usize, modulus: Option<i128>) {
    let mut prow = 0;
    for col in 0..ncols {
        if prow >= m.len() {
            break;
        }
        // Euclid on the column among rows prow..
        loop {
            let mut best: Option<usize> = None;
            for i in prow..m.len() {
                if m[i][col] != 0 && best.is_none_or(|b| m[i][col].abs() < m[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(prow, b);
            let mut done = true;
            for i in prow + 1..m.len() {
                if m[i][col] != 0 {
                    let q = m[i][col].div_euclid(m[prow][col]);
                    let (head, tail) = m.split_at_mut(i);
                    let piv = &head[prow];
                    for (x, &y) in tail[0].iter_mut().zip(piv.iter()).skip(col) {
                        *x -= q * y;
                    }
                    if let Some(d) = modulus {
                        for x in tail[0].iter_mut().skip(col + 1) {
                            *x = x.rem_euclid(d);
                        }
                    }
                    if tail[0][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[prow][col] == 0 {
            continue;
        }
        if m[prow][col] < 0 {
            for x in m[prow].iter_mut() {
                *x = -*x;
            }
        }
        if let Some(d) = modulus {
            for x in m[prow].iter_mut().skip(col + 1) {
                *x = x.rem_euclid(d);
            }
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
        prow += 1;
        if prow > m.len() {
            break;
        }
    }
    m.retain(|r| r.iter().any(|&x| x != 0));
    m.truncate(ncols);
    reduce_above(m);
}

fn pivot_col(r: &Row) -> Option<usize> {
    r.iter().position(|&x| x != 0)
}

fn reduce_above(m: &mut [Row]) {
    for k in 0..m.len() {
        let Some(c) = pivot_col(&m[k]) else { continue };
        let p = m[k][c];
        for i in 0..k {
            let q = m[i][c].div_euclid(p);
            if q != 0 {
                let (head, tail) = m.split_at_mut(k);
                for (x, &y) in head[i].iter_mut().zip(tail[0].iter()) {
                    *x -= q * y;
                }
            }
        }
    }
}

/// Reduce `v` modulo a full-rank upper triangular HNF; the result is the
/// canonical residue with `0 <= v_j < h_jj`.
pub fn reduce(h: &[Row], v: &[i128]) -> Row {
    let mut v = v.to_vec();
    for (j, row) in h.iter().enumerate() {
        let q = v[j].div_euclid(row[j]);
        if q != 0 {
            for (x, &y) in v.iter_mut().zip(row.iter()).skip(j) {
                *x -= q * y;
            }
        }
    }
    v
}

/// Membership test for a lattice in echelon HNF (any rank).
pub fn contains(h: &[Row], v: &[i128]) -> bool {
    let mut v = v.to_vec();
    for row in h {
        let c = pivot_col(row).expect("hnf rows are nonzero");
        if v[..c].iter().any(|&x| x != 0) {
            return false;
        }
        if v[c] % row[c] != 0 {
            return false;
        }
        let q = v[c] / row[c];
        for (x, &y) in v.iter_mut().zip(row.iter()).skip(c) {
            *x -= q * y;
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Product of the diagonal of a full-rank HNF.
pub fn det(h: &[Row]) -> i128 {
    h.iter().enumerate().map(|(i, r)| r[i]).product()
}

pub fn is_full_rank(h: &[Row], n: usize) -> bool {
    h.len() == n && h.iter().enumerate().all(|(i, r)| r[i] != 0)
}

/// Lattices `A + B` and `A ∩ B` via a single Zassenhaus HNF.
pub fn sum_and_intersection(a: &[Row], b: &[Row], n: usize) -> (Vec<Row>, Vec<Row>) {
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for r in a {
        let mut v = r.clone();
        v.extend_from_slice(r);
        gens.push(v);
    }
    for r in b {
        let mut v = r.clone();
        v.extend(std::iter::repeat_n(0, n));
        gens.push(v);
    }
    let h = hnf(&gens, 2 * n);
    let mut sum = Vec::new();
    let mut inter = Vec::new();
    for r in h {
        if r[..n].iter().any(|&x| x != 0) {
            sum.push(r[..n].to_vec());
        } else {
            inter.push(r[n..].to_vec());
        }
    }
    (hnf(&sum, n), hnf(&inter, n))
}

pub fn intersection(a: &[Row], b: &[Row], n: usize) -> Vec<Row> {
    sum_and_intersection(a, b, n).1
}

pub fn sum(a: &[Row], b: &[Row], n: usize) -> Vec<Row> {
    let mut g = a.to_vec();
    g.extend_from_slice(b);
    hnf(&g, n)
}

/// Find `o ∈ A` with `v - o ∈ B`, if `v ∈ A + B`.
pub fn split_in_sum(a: &[Row], b: &[Row], v: &[i128], n: usize) -> Option<Row> {
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for r in a {
        let mut w = r.clone();
        w.extend_from_slice(r);
        gens.push(w);
    }
    for r in b {
        let mut w = r.clone();
        w.extend(std::iter::repeat_n(0, n));
        gens.push(w);
    }
    let h = hnf(&gens, 2 * n);
    let mut w: Row = v.to_vec();
    w.extend(std::iter::repeat_n(0, n));
    for row in &h {
        let c = pivot_col(row).unwrap();
        if c >= n {
            break;
        }
        if w[..c].iter().any(|&x| x != 0) || w[c] % row[c] != 0 {
            return None;
        }
        let q = w[c] / row[c];
        for (x, &y) in w.iter_mut().zip(row.iter()) {
            *x -= q * y;
        }
    }
    if w[..n].iter().any(|&x| x != 0) {
        return None;
    }
    Some(w[n..].iter().map(|&x| -x).collect())
}

/// Iterate over a complete residue system of `Z^n / H` for a full-rank
/// triangular `H`: the mixed-radix box `0 <= c_j < h_jj`.
pub fn residue_box(h: &[Row]) -> impl Iterator<Item = Row> + '_ {
    let n = h.len();
    let radices: Vec<i128> = (0..n).map(|i| h[i][i]).collect();
    let total: i128 = radices.iter().product();
    let mut cur = vec![0i128; n];
    let mut count = 0i128;
    std::iter::from_fn(move || {
        if count >= total {
            return None;
        }
        let out = cur.clone();
        count += 1;
        for j in (0..n).rev() {
            cur[j] += 1;
            if cur[j] < radices[j] {
                break;
            }
            cur[j] = 0;
        }
        Some(out)
    })
}

/// Coordinates of the sublattice `B ⊆ A` with respect to the rows of `A`
/// (both full rank, triangular). Returned as an HNF.
pub fn relative_hnf(a: &[Row], b: &[Row]) -> Vec<Row> {
    let n = a.len();
    let rows: Vec<Row> = b
        .iter()
        .map(|v| solve_triangular(a, v).expect("B must lie inside A"))
        .collect();
    hnf(&rows, n)
}

/// Solve `x * A = v` for integer `x`, with `A` upper triangular.
pub fn solve_triangular(a: &[Row], v: &[i128]) -> Option<Row> {
    let n = a.len();
    let mut v = v.to_vec();
    let mut x = vec![0; n];
    for j in 0..n {
        if v[j] % a[j][j] != 0 {
            return None;
        }
        x[j] = v[j] / a[j][j];
        for (k, &y) in a[j].iter().enumerate().skip(j) {
            v[k] -= x[j] * y;
        }
    }
    Some(x)
}

/// Integer combination `x * A`.
pub fn combine(a: &[Row], x: &[i128]) -> Row {
    let n = a.first().map_or(0, |r| r.len());
    let mut out = vec![0; n];
    for (r, &c) in a.iter().zip(x) {
        if c != 0 {
            for (o, &y) in out.iter_mut().zip(r) {
                *o += c * y;
            }
        }
    }
    out
}

/// Complete residue system of the lattice `A` modulo its sublattice `B`,
/// expressed in ambient coordinates.
pub fn quotient_residues(a: &[Row], b: &[Row]) -> Vec<Row> {
    let rel = relative_hnf(a, b);
    residue_box(&rel).map(|c| combine(a, &c)).collect()
}

/// Lexicographic comparison used for deterministic ordering.
pub fn lex_cmp(a: &[i128], b: &[i128]) -> Ordering {
    a.cmp(b)
}

/// Exact determinant by Bareiss elimination.
pub fn det_bareiss(m: &[Row]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Row> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
