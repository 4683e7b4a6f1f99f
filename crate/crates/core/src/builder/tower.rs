//! The tower loop: adjoin roots of `X^2 - omega_i X + eta` until the order
//! reaches `O_K`.

use serde::Serialize;

use crate::density::base_change_remedy;
use crate::error::{Error, Result};
use crate::nf_core::{AlgebraicInt, NumberField, PrimeIdealData, SubOrder};

use super::compositum::{compositum_basis, CompositumBasis, CompositumRing};
use super::omega::{check_eta, find_omega};
use super::step::{quadratic_step, TowerStep};
use super::units::{check_hypotheses, unit_order};

#[derive(Clone, Debug)]
pub enum StartOrder {
    /// The ring generated by these units and their inverses.
    Units(Vec<AlgebraicInt>),
    Order(SubOrder),
}

#[derive(Clone, Copy, Debug)]
pub struct TowerCaps {
    /// Largest max-norm shell scanned per step.
    pub search_bound: u32,
    pub max_steps: usize,
}

impl Default for TowerCaps {
    fn default() -> Self {
        TowerCaps {
            search_bound: 8,
            max_steps: 64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tower {
    pub base: String,
    pub start_order: SubOrder,
    pub start_index: u128,
    pub steps: Vec<TowerStep>,
    /// Index in `O_K` of the start order with every `omega_i` adjoined.
    pub final_index: u128,
    /// Index after each step.
    pub indices: Vec<u128>,
    pub compositum: CompositumBasis,
}

fn hypothesis_error() -> Error {
    Error::Hypothesis {
        reason: "a prime above 2 or 3 has residue degree 1".into(),
        remedy: base_change_remedy(),
    }
}

pub fn build_tower(
    k: &NumberField,
    start: &StartOrder,
    eta: &[i128],
    caps: TowerCaps,
) -> Result<Tower> {
    if !check_hypotheses(k)? {
        return Err(hypothesis_error());
    }
    let start_order = match start {
        StartOrder::Units(gens) => unit_order(k, gens)?,
        StartOrder::Order(o) => o.clone(),
    };
    let mut o = start_order.clone();
    let mut steps = Vec::new();
    let mut indices = Vec::new();
    if !o.is_maximal() {
        check_eta(k, &o, eta)?;
    }
    let mut primes: Vec<PrimeIdealData> = k.primes_above(2)?.to_vec();
    while !o.is_maximal() {
        if steps.len() == caps.max_steps {
            return Err(Error::CapExceeded {
                size: steps.len() as u128 + 1,
                cap: caps.max_steps as u128,
            });
        }
        let w = find_omega(k, &o, &primes, eta, caps.search_bound)?;
        let step = quadratic_step(k, &w, eta)?;
        let next = k.adjoin(&o, &w)?;
        if 2 * next.index() > o.index() {
            return Err(Error::Precondition(format!(
                "index went from {} to {}, expected at least halving",
                o.index(),
                next.index()
            )));
        }
        for pr in k.support(&step.disc_ideal)? {
            if !primes.contains(&pr) {
                primes.push(pr);
            }
        }
        indices.push(next.index());
        steps.push(step);
        o = next;
    }
    let compositum = compositum_basis(k, &steps)?;
    Ok(Tower {
        base: k.name().to_string(),
        start_index: start_order.index(),
        start_order,
        final_index: o.index(),
        indices,
        steps,
        compositum,
    })
}

/// Independent re-check of a tower. Each flag is computed on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGenerationReport {
    /// Every `eta_i` is a unit.
    pub eta_units: bool,
    /// `omega_i = alpha_i + eta alpha_i^(-1)` in `O_K[X] / (X^2 - omega_i X + eta)`.
    pub omega_identity: bool,
    /// The start order with all `omega_i` adjoined is `O_K`.
    pub reaches_maximal: bool,
    /// The discriminants are squarefree, odd and pairwise coprime.
    pub discriminants_coprime: bool,
    /// `2^r <= [O_K : start order]`.
    pub step_count_bound: bool,
    pub failures: Vec<String>,
}

impl UnitGenerationReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_unit_generation(k: &NumberField, t: &Tower) -> Result<UnitGenerationReport> {
    let mut r = verify_steps(k, &t.start_order, &t.steps)?;
    if t.final_index != 1 && r.reaches_maximal {
        r.reaches_maximal = false;
        r.failures
            .push(format!("(c) recorded final index is {}", t.final_index));
    }
    Ok(r)
}

/// The same checks for a start order and a list of steps.
pub fn verify_steps(
    k: &NumberField,
    start_order: &SubOrder,
    steps: &[TowerStep],
) -> Result<UnitGenerationReport> {
    let mut failures = Vec::new();

    let eta_units = steps.iter().all(|s| k.is_unit(&s.eta));
    if !eta_units {
        failures.push("(a) some eta is not a unit".into());
    }

    let mut omega_identity = eta_units;
    for (i, s) in steps.iter().enumerate() {
        let Some(_) = k.inverse(&s.eta) else { continue };
        let r = CompositumRing::single(k, &s.omega, &s.eta);
        let a = r.alpha(0);
        let inv = r.alpha_inverse(0).expect("eta is a unit");
        let ok = r.mul(&a, &inv) == r.from_base(&k.one())
            && r.add(&a, &r.scale(&inv, &s.eta)) == r.from_base(&s.omega);
        if !ok {
            omega_identity = false;
            failures.push(format!("(b) identity fails at step {}", i + 1));
        }
    }

    let mut o = start_order.clone();
    for s in steps {
        o = k.adjoin(&o, &s.omega)?;
    }
    let reaches_maximal = o.is_maximal();
    if !reaches_maximal {
        failures.push(format!("(c) final index is {}", o.index()));
    }

    let mut discriminants_coprime = true;
    let twos = k.primes_above(2)?;
    let mut ideals = Vec::with_capacity(steps.len());
    for (i, s) in steps.iter().enumerate() {
        let d = k.sub(&k.mul(&s.omega, &s.omega), &k.scale(&s.eta, 4));
        let mut why = None;
        if k.is_zero(&d) {
            why = Some("is zero");
        } else if twos.iter().any(|pr| pr.contains(&d)) {
            why = Some("is not coprime to 2");
        } else if !k.is_mfree_element(&d, 2)? {
            why = Some("is not squarefree");
        }
        if let Some(w) = why {
            discriminants_coprime = false;
            failures.push(format!("(d) discriminant of step {} {w}", i + 1));
            continue;
        }
        let ideal = k.principal_ideal(&d)?;
        if ideal != s.disc_ideal {
            discriminants_coprime = false;
            failures.push(format!(
                "(d) recorded discriminant of step {} is wrong",
                i + 1
            ));
        }
        for (j, prev) in ideals.iter().enumerate() {
            if !k.coprime(prev, &ideal) {
                discriminants_coprime = false;
                failures.push(format!("(d) steps {} and {} share a prime", j + 1, i + 1));
            }
        }
        ideals.push(ideal);
    }

    let step_count_bound = steps.len() < 128 && (1u128 << steps.len()) <= start_order.index();
    if !step_count_bound {
        failures.push(format!(
            "(e) {} steps exceed log2 of index {}",
            steps.len(),
            start_order.index()
        ));
    }

    Ok(UnitGenerationReport {
        eta_units,
        omega_identity,
        reaches_maximal,
        discriminants_coprime,
        step_count_bound,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn golden_tower() {
        let k = fields::golden();
        let o = k.named_order("Z[sqrt5]").unwrap();
        let t = build_tower(&k, &StartOrder::Order(o), &[1, 2], TowerCaps::default()).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].omega, k.theta());
        assert_eq!(t.final_index, 1);
        let r = verify_unit_generation(&k, &t).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures);

        let mut bad = t.clone();
        bad.steps[0].omega = k.scale(&k.theta(), 2);
        let r = verify_unit_generation(&k, &bad).unwrap();
        assert!(!r.discriminants_coprime);
        assert!(r.eta_units && r.omega_identity);
    }

    #[test]
    fn unit_start_and_empty_tower() {
        let k = fields::golden();
        let t = build_tower(
            &k,
            &StartOrder::Units(vec![vec![1, 2]]),
            &[1, 2],
            TowerCaps::default(),
        )
        .unwrap();
        assert_eq!(t.start_index, 2);
        assert_eq!(t.steps.len(), 1);
        let t = build_tower(
            &k,
            &StartOrder::Order(k.maximal_order()),
            &[1, 2],
            TowerCaps::default(),
        )
        .unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.compositum.subsets, vec![Vec::<usize>::new()]);
        assert!(verify_unit_generation(&k, &t).unwrap().all_passed());
    }

    #[test]
    fn base_change_needed() {
        let k = fields::sqrt2();
        let o = k.named_order("Z[2sqrt2]").unwrap();
        let e = build_tower(&k, &StartOrder::Order(o), &[1, 1], TowerCaps::default()).unwrap_err();
        match e {
            Error::Hypothesis { remedy, .. } => assert!(remedy.contains("sqrt(5)")),
            e => panic!("{e:?}"),
        }
    }
}
