//! Small dense floating-point matrices.

/// Inverse by Gauss-Jordan with partial pivoting; `None` if singular.
pub fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 {
            return None;
        }
        a.swap(col, piv);
        let inv = 1.0 / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != col {
                let f = a[i][col];
                if f != 0.0 {
                    let pivot_row = a[col].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by elimination with partial pivoting.
pub fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= a[col][col];
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, y) in a[i].iter_mut().zip(pivot_row) {
                *x -= f * y;
            }
        }
    }
    d
}

/// Row vector times matrix.
pub fn row_times(v: &[f64], m: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; m[0].len()];
    for (c, row) in v.iter().zip(m) {
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
