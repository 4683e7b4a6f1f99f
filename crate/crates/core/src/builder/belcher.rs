//! Which real and imaginary quadratic fields have rings of integers generated
//! by units.

use num_integer::Roots;
use serde::Serialize;

use crate::error::{Error, Result};

fn is_square(x: i64) -> bool {
    x >= 0 && x.sqrt().pow(2) == x
}

fn is_squarefree(d: i64) -> bool {
    let a = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= a {
        if a.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Whether the ring of integers of `Q(sqrt d)` is generated by its units.
pub fn belcher_criterion(d: i64) -> Result<bool> {
    if d == 0 || d == 1 {
        return Err(Error::InvalidInput(format!(
            "d = {d} does not give a quadratic field"
        )));
    }
    if !is_squarefree(d) {
        return Err(Error::InvalidInput(format!("{d} is not squarefree")));
    }
    if d == -1 || d == -3 {
        return Ok(true);
    }
    if d < 0 {
        return Ok(false);
    }
    let shift = if d.rem_euclid(4) == 1 { 4 } else { 1 };
    Ok(is_square(d + shift) || is_square(d - shift))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BelcherRow {
    pub d: i64,
    pub unit_generated: bool,
}

/// The criterion for every squarefree `d` with `|d| <= bound`, `d != 0, 1`,
/// in increasing order.
pub fn belcher_table(bound: i64) -> Vec<BelcherRow> {
    (-bound..=bound)
        .filter(|&d| d != 0 && d != 1 && is_squarefree(d))
        .map(|d| BelcherRow {
            d,
            unit_generated: belcher_criterion(d).expect("squarefree"),
        })
        .collect()
}
