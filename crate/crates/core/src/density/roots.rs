//! Root counts of a sieve polynomial modulo ideals of `O_K` and of a
//! suborder.

use crate::arith::ffpoly;
use crate::arith::hnf;
use crate::error::{Error, Result};
use crate::nf_core::{IdealLattice, NumberField, PrimeIdealData, SubOrder, RESIDUE_CAP};

use super::SievePolynomial;

fn check_cap(size: u128) -> Result<()> {
    if size > RESIDUE_CAP {
        return Err(Error::CapExceeded {
            size,
            cap: RESIDUE_CAP,
        });
    }
    Ok(())
}

/// `L(a)`, multiplicative over the prime-power factorization.
pub fn root_count(k: &NumberField, f: &SievePolynomial, a: &IdealLattice) -> Result<u128> {
    if a.is_unit_ideal() {
        return Ok(1);
    }
    let mut total = 1u128;
    for (pr, e) in k.factor_ideal(a)? {
        total *= root_count_prime_power(k, f, &pr, e)?;
        if total == 0 {
            break;
        }
    }
    Ok(total)
}

/// `L(P^e)`: roots mod `P` counted in the residue field, then lifted. Simple
/// roots lift uniquely; singular ones are lifted by exhausting `P / P^e`.
pub fn root_count_prime_power(
    k: &NumberField,
    f: &SievePolynomial,
    pr: &PrimeIdealData,
    e: u32,
) -> Result<u128> {
    if e == 0 {
        return Ok(1);
    }
    let fq = pr.residue_field();
    let fbar = ffpoly::trim(&fq, f.coeffs().iter().map(|c| pr.residue(c)).collect());
    if !fbar.is_empty() {
        if e == 1 {
            return Ok(ffpoly::count_distinct_roots(&fq, &fbar) as u128);
        }
        let d = ffpoly::derivative(&fq, &fbar);
        let g = ffpoly::gcd(&fq, &fbar, &d);
        if ffpoly::deg(&g) == Some(0) {
            return Ok(ffpoly::count_distinct_roots(&fq, &fbar) as u128);
        }
    } else if e == 1 {
        return Ok(pr.norm());
    }
    check_cap(pr.norm())?;
    let big = k.prime_power(pr, e);
    let deriv = f.derivative(k);
    let lifts = hnf::quotient_residues(pr.ideal.hnf(), big.hnf());
    check_cap(lifts.len() as u128 * pr.norm())?;
    let mut total = 0u128;
    for r in pr.ideal.residues() {
        if !pr.contains(&f.eval(k, &r)) {
            continue;
        }
        if !pr.contains(&k.eval_poly(&deriv, &r)) {
            total += 1;
            continue;
        }
        for t in &lifts {
            if big.contains(&f.eval(k, &k.add(&r, t))) {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// `L(a)` by running through all of `O_K / a`.
pub fn root_count_brute(k: &NumberField, f: &SievePolynomial, a: &IdealLattice) -> Result<u128> {
    check_cap(a.norm())?;
    Ok(a.residues().filter(|b| a.contains(&f.eval(k, b))).count() as u128)
}

/// `L_O(a)`: the part of `a` at primes dividing the conductor is counted in
/// `O / (O ∩ a_f)` directly, the rest through `L`.
pub fn root_count_order(
    k: &NumberField,
    f: &SievePolynomial,
    a: &IdealLattice,
    o: &SubOrder,
) -> Result<u128> {
    if o.is_maximal() {
        return root_count(k, f, a);
    }
    if a.is_unit_ideal() {
        return Ok(1);
    }
    let cond = o.conductor();
    let mut at_conductor = Vec::new();
    let mut coprime = Vec::new();
    for (pr, e) in k.factor_ideal(a)? {
        if cond.is_subset_of(&pr.ideal) {
            at_conductor.push((pr, e));
        } else {
            coprime.push((pr, e));
        }
    }
    let mut total = 1u128;
    for (pr, e) in &coprime {
        total *= root_count_prime_power(k, f, pr, *e)?;
    }
    if total == 0 || at_conductor.is_empty() {
        return Ok(total);
    }
    let af = k.ideal_from_factors(&at_conductor);
    Ok(total * root_count_order_brute(k, f, &af, o)?)
}

/// `L_O(a)` by running through all of `O / (O ∩ a)`.
pub fn root_count_order_brute(
    k: &NumberField,
    f: &SievePolynomial,
    a: &IdealLattice,
    o: &SubOrder,
) -> Result<u128> {
    let c = k.contract_ideal(a, o);
    check_cap(c.index)?;
    Ok(o.residues_mod(&c.lattice)
        .iter()
        .filter(|b| a.contains(&f.eval(k, b)))
        .count() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn golden_root_counts() {
        let k = fields::golden();
        let f = SievePolynomial::x2_minus_4(&k, &k.theta()).unwrap();
        let two = k.principal_ideal(&[2, 0]).unwrap();
        let four = k.principal_ideal(&[4, 0]).unwrap();
        assert_eq!(root_count(&k, &f, &two).unwrap(), 1);
        assert_eq!(root_count(&k, &f, &four).unwrap(), 4);
        assert_eq!(root_count_brute(&k, &f, &four).unwrap(), 4);
        assert_eq!(root_count(&k, &f, &k.unit_ideal()).unwrap(), 1);
    }

    #[test]
    fn order_root_counts() {
        let k = fields::golden();
        let o = k.named_order("Z[sqrt5]").unwrap();
        // 2 + sqrt5 = 1 + 2 theta
        let f = SievePolynomial::x2_minus_4(&k, &[1, 2]).unwrap();
        let two = k.principal_ideal(&[2, 0]).unwrap();
        assert_eq!(root_count_order(&k, &f, &two, &o).unwrap(), 1);
        assert_eq!(root_count_order_brute(&k, &f, &two, &o).unwrap(), 1);
        assert_eq!(root_count_order(&k, &f, &k.unit_ideal(), &o).unwrap(), 1);
        let ok = k.maximal_order();
        assert_eq!(
            root_count_order(&k, &f, &two, &ok).unwrap(),
            root_count(&k, &f, &two).unwrap()
        );
    }

    #[test]
    fn lifting_matches_brute_force() {
        let k = fields::golden();
        let f = SievePolynomial::x2_minus_4(&k, &k.theta()).unwrap();
        for a in k.ideals_up_to_norm(200).unwrap() {
            assert_eq!(
                root_count(&k, &f, &a).unwrap(),
                root_count_brute(&k, &f, &a).unwrap(),
                "{a}"
            );
        }
    }
}
