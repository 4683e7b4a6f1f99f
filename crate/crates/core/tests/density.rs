mod common;

use num_traits::Zero;
use unitgen::arith::interval::rat;
use unitgen::density::{
    conductor_product, conductor_sum, empirical_count, euler_density, root_count, root_count_brute,
    root_count_order, root_count_order_brute, DensityParams, SievePolynomial,
};
use unitgen::fields;
use unitgen::geometry::RegionBox;

#[test]
fn lifting_matches_brute_force() {
    for k in common::bundled_fields() {
        let ideals = k.ideals_up_to_norm(200).unwrap();
        for f in common::test_polynomials(&k) {
            for a in &ideals {
                assert_eq!(
                    root_count(&k, &f, a).unwrap(),
                    root_count_brute(&k, &f, a).unwrap(),
                    "{} {} {a}",
                    k.name(),
                    f.format(&k)
                );
            }
        }
    }
}

#[test]
fn order_counts_match_brute_force() {
    for k in common::bundled_fields() {
        let ideals = k.ideals_up_to_norm(200).unwrap();
        for (o, f) in common::order_cases(&k) {
            for a in &ideals {
                assert_eq!(
                    root_count_order(&k, &f, a, &o).unwrap(),
                    root_count_order_brute(&k, &f, a, &o).unwrap(),
                    "{} {} {a}",
                    k.name(),
                    f.format(&k)
                );
            }
        }
    }
}

#[test]
fn root_counts_multiply_over_coprime_ideals() {
    for k in common::bundled_fields() {
        let ideals = k.ideals_up_to_norm(100).unwrap();
        let f = SievePolynomial::x2_minus_4(&k, &k.theta()).unwrap();
        for a in ideals.iter().filter(|a| a.norm() <= 10) {
            for b in &ideals {
                if a.norm() * b.norm() > 100 || !k.coprime(a, b) {
                    continue;
                }
                let ab = k.ideal_mul(a, b);
                assert_eq!(
                    root_count(&k, &f, &ab).unwrap(),
                    root_count(&k, &f, a).unwrap() * root_count(&k, &f, b).unwrap()
                );
            }
        }
    }
}

#[test]
fn conductor_sum_forms_agree() {
    let k = fields::golden();
    for (o, f) in common::order_cases(&k) {
        let p = DensityParams::new(&k, o, f, vec![], 2).unwrap();
        assert_eq!(conductor_sum(&p).unwrap(), conductor_product(&p).unwrap());
    }
    let o = k.named_order("Z[sqrt5]").unwrap();
    let f = SievePolynomial::x2_minus_4(&k, &[1, 2]).unwrap();
    let p = DensityParams::new(&k, o, f, k.primes_above(2).unwrap().to_vec(), 2).unwrap();
    assert_eq!(conductor_sum(&p).unwrap(), rat(1, 2));
}

#[test]
fn enclosures_nest_and_contain_counts() {
    let k = fields::golden();
    let f = SievePolynomial::x2_minus_4(&k, &k.theta()).unwrap();
    let p = DensityParams::new(&k, k.maximal_order(), f, vec![], 2).unwrap();
    let coarse = euler_density(&p, 200).unwrap();
    let fine = euler_density(&p, 3000).unwrap();
    assert!(coarse.interval.contains_interval(&fine.interval));
    assert!(fine.interval.width() < coarse.interval.width());
    assert!(fine.fixed_divisor.is_none());
    assert!(fine.interval.lo > num_rational::BigRational::zero());
}

#[test]
fn fixed_divisor_forces_zero() {
    // X^2 + X + sqrt2 lands in the prime above 2, whose residue field is F_2
    let k = fields::sqrt2();
    let f = SievePolynomial::new(&k, vec![k.theta(), k.one(), k.one()]).unwrap();
    let pr = k.primes_above(2).unwrap()[0].clone();
    let p = DensityParams::new(&k, k.maximal_order(), f, vec![pr], 2).unwrap();
    let d = euler_density(&p, 50).unwrap();
    assert!(d.fixed_divisor.is_some());
    assert!(d.interval.hi.is_zero());
}

#[test]
fn counts_are_thread_independent() {
    let k = fields::golden();
    let f = SievePolynomial::x2_minus_4(&k, &k.theta()).unwrap();
    let p = DensityParams::new(&k, k.maximal_order(), f, vec![], 2).unwrap();
    let bx = RegionBox::uniform(3000.0, k.signature()).unwrap();
    let counts: Vec<u64> = [1, 2, 5]
        .iter()
        .map(|&t| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap();
            pool.install(|| empirical_count(&p, &bx).unwrap())
        })
        .collect();
    assert!(counts.windows(2).all(|w| w[0] == w[1]));
}
