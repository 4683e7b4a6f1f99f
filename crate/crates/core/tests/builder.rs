use proptest::prelude::*;
use unitgen::builder::{
    belcher_criterion, build_tower, compositum_basis, find_omega, quadratic_step, shell,
    verify_unit_generation, StartOrder, TowerCaps,
};
use unitgen::fields;
use unitgen::nf_core::NumberField;

fn golden_tower_json(k: &NumberField) -> String {
    let o = k.named_order("Z[sqrt5]").unwrap();
    let t = build_tower(k, &StartOrder::Order(o), &[1, 2], TowerCaps::default()).unwrap();
    serde_json::to_string(&t).unwrap()
}

#[test]
fn towers_are_deterministic() {
    let k = fields::golden();
    let a = golden_tower_json(&k);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    let b = pool.install(|| golden_tower_json(&k));
    assert_eq!(a, b);
}

#[test]
fn accepted_omegas_satisfy_the_conditions() {
    let k = fields::golden();
    let o = k.named_order("Z[sqrt5]").unwrap();
    let eta = vec![1, 2];
    let mut excluded = k.primes_above(2).unwrap().to_vec();
    for extra in [19u128, 11, 29, 31, 41] {
        let w = find_omega(&k, &o, &excluded, &eta, 6).unwrap();
        assert!(!o.contains(&w));
        let d = k.sub(&k.mul(&w, &w), &k.scale(&eta, 4));
        assert!(excluded.iter().all(|pr| !pr.contains(&d)));
        assert!(k.factor_element(&d).unwrap().iter().all(|(_, e)| *e == 1));
        excluded.extend(k.primes_above(extra).unwrap().iter().cloned());
    }
}

#[test]
fn step_discriminants_have_valuation_one() {
    let k = fields::golden();
    let eta = vec![1, 2];
    for w in [k.theta(), vec![1, 1], vec![2, 1], vec![1, 3], vec![3, 5]] {
        let Ok(s) = quadratic_step(&k, &w, &eta) else {
            continue;
        };
        assert!(s.ramified.iter().all(|(_, v)| *v == 1));
        let facs = k.factor_ideal(&s.disc_ideal).unwrap();
        assert_eq!(facs.len(), s.ramified.len());
        assert_eq!(s.disc_element_norm.unsigned_abs(), s.disc_ideal.norm());
    }
}

#[test]
fn tower_from_index_three() {
    let k = fields::golden();
    let o = k.named_order("Z[3theta]").unwrap();
    // -theta^4 = -2 - 3 theta is a unit of Z + 3 O_K and totally negative
    let eta = vec![-2, -3];
    let t = build_tower(&k, &StartOrder::Order(o), &eta, TowerCaps::default()).unwrap();
    assert_eq!(t.final_index, 1);
    assert!(verify_unit_generation(&k, &t).unwrap().all_passed());
    let c = compositum_basis(&k, &t.steps).unwrap();
    assert_eq!(c.subsets.len(), 1 << c.contributing.len());
}

#[test]
fn search_caps_are_reported() {
    let k = fields::golden();
    let o = k.named_order("Z[sqrt5]").unwrap();
    let caps = TowerCaps {
        search_bound: 0,
        max_steps: 4,
    };
    let e = build_tower(&k, &StartOrder::Order(o.clone()), &[1, 2], caps).unwrap_err();
    assert!(matches!(e, unitgen::Error::SearchExhausted(_)));
    let caps = TowerCaps {
        search_bound: 4,
        max_steps: 0,
    };
    let e = build_tower(&k, &StartOrder::Order(o), &[1, 2], caps).unwrap_err();
    assert!(matches!(e, unitgen::Error::CapExceeded { .. }));
}

/// A unit `a + b w` with `b = 1` exists, `w` the usual integral generator.
fn unit_with_unit_coefficient(d: i64) -> bool {
    if d < 0 {
        return d == -1 || d == -3;
    }
    let d = d as i128;
    (-2000i128..=2000).any(|a| {
        if d.rem_euclid(4) == 1 {
            // N(a + (1 + sqrt d)/2) = ((2a+1)^2 - d) / 4
            ((2 * a + 1).pow(2) - d).abs() == 4
        } else {
            (a * a - d).abs() == 1
        }
    })
}

#[test]
fn belcher_matches_unit_search() {
    for d in -100i64..=100 {
        let Ok(b) = belcher_criterion(d) else {
            continue;
        };
        assert_eq!(b, unit_with_unit_coefficient(d), "d = {d}");
    }
}

proptest! {
    #[test]
    fn shells_have_the_right_size(n in 1usize..4, b in 1i128..5) {
        let s = shell(n, b);
        let want = (2 * b + 1).pow(n as u32) - (2 * b - 1).pow(n as u32);
        prop_assert_eq!(s.len() as i128, want);
        prop_assert!(s.iter().all(|v| v.iter().map(|c| c.abs()).max() == Some(b)));
    }

    #[test]
    fn belcher_rejects_non_squarefree(d in -500i64..500, q in 2i64..8) {
        prop_assert!(belcher_criterion(d * q * q).is_err() || d == 0);
    }
}
