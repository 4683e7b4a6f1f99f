use crate::density::small_prime_obstruction;
use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, NumberField, SubOrder};

/// The ring generated by the given units and their inverses.
pub fn unit_order(k: &NumberField, unit_gens: &[AlgebraicInt]) -> Result<SubOrder> {
    let mut gens = Vec::with_capacity(2 * unit_gens.len());
    for u in unit_gens {
        if u.len() != k.degree() {
            return Err(Error::InvalidInput("unit has the wrong length".into()));
        }
        let inv = k
            .inverse(u)
            .ok_or_else(|| Error::InvalidInput(format!("{} is not a unit", k.format_element(u))))?;
        gens.push(u.clone());
        gens.push(inv);
    }
    k.order_generated(&gens)
}

/// Every prime above 2 and 3 has residue degree at least 2.
pub fn check_hypotheses(k: &NumberField) -> Result<bool> {
    Ok(small_prime_obstruction(k)?.is_none())
}
