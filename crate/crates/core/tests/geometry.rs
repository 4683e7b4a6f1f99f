mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unitgen::geometry::{count_coset, embed_lattice, enumerate_region, rescaling_det, RegionBox};

#[test]
fn enumeration_matches_double_loop() {
    for k in common::bundled_fields() {
        let (r, s) = k.signature();
        for bounds in [
            vec![3.3, 3.3],
            vec![7.1, 2.7],
            vec![11.9, 11.9],
            vec![25.3, 4.1],
        ] {
            let bx = if s == 0 {
                RegionBox::new(bounds.clone(), (r, s)).unwrap()
            } else {
                RegionBox::new(vec![bounds[0]; 2], (r, s)).unwrap()
            };
            let got = enumerate_region(&k, &k.zero(), k.maximal_order().basis(), &bx).unwrap();
            let want = common::dumb_box_points(&k, bx.bounds(), 80);
            let mut got_sorted = got.clone();
            got_sorted.sort();
            assert_eq!(got_sorted, want, "{} {:?}", k.name(), bx.bounds());
        }
    }
}

#[test]
fn enumeration_is_thread_independent() {
    let k = unitgen::fields::golden();
    let bx = RegionBox::uniform(5000.0, k.signature()).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let basis = k.maximal_order().basis().to_vec();
    let a = one.install(|| enumerate_region(&k, &k.zero(), &basis, &bx).unwrap());
    let b = four.install(|| enumerate_region(&k, &k.zero(), &basis, &bx).unwrap());
    assert_eq!(a, b);
}

#[test]
fn random_lattices_respect_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let n = if case % 2 == 0 { 2 } else { 3 };
        let (count, main, bound) = common::lattice_box_case(&mut rng, n);
        assert!((count as f64 - main).abs() <= bound, "case {case}");
    }
}

#[test]
fn rescaling_has_unit_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        assert!((rescaling_det(&common::random_box(&mut rng)) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn coset_counts_within_bound() {
    for k in common::bundled_fields() {
        let ok = k.maximal_order();
        let ideals = k.ideals_up_to_norm(20).unwrap();
        for (i, a) in ideals.iter().enumerate().step_by(3) {
            for x in [10.0, 300.0, 5000.0] {
                let bx = RegionBox::uniform(x, k.signature()).unwrap();
                let beta = vec![i as i128, 1];
                let c = count_coset(&k, &beta, a, &ok, &bx).unwrap();
                assert!(c.deviation <= c.error_bound, "{} {a} x={x}", k.name());
            }
        }
        let l = embed_lattice(&k, ok.basis()).unwrap();
        assert!(
            (l.det().abs()
                - (k.disc().abs() as f64).sqrt() * if k.signature().1 > 0 { 0.5 } else { 1.0 })
            .abs()
                < 1e-9
        );
    }
}
