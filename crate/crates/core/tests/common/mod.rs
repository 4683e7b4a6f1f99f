//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use unitgen::arith::hnf;
use unitgen::density::SievePolynomial;
use unitgen::fields;
use unitgen::geometry::{count_in_box, widmer_bound, EmbeddedLattice, RegionBox};
use unitgen::nf_core::{NumberField, SubOrder};

pub fn bundled_fields() -> Vec<NumberField> {
    vec![fields::golden(), fields::sqrt2(), fields::gaussian()]
}

/// Real or complex images of `a + b theta` from the defining polynomial,
/// computed with the quadratic formula in f64. Layout matches the library:
/// real roots descending, then (Re, Im) of the complex root with Im > 0.
pub fn quadratic_sigma(k: &NumberField, a: &[i128]) -> Vec<f64> {
    let c0 = k.min_poly()[0] as f64;
    let c1 = k.min_poly()[1] as f64;
    let disc = c1 * c1 - 4.0 * c0;
    let (x, y) = (a[0] as f64, a[1] as f64);
    if disc > 0.0 {
        let r1 = (-c1 + disc.sqrt()) / 2.0;
        let r2 = (-c1 - disc.sqrt()) / 2.0;
        vec![x + y * r1, x + y * r2]
    } else {
        let re = -c1 / 2.0;
        let im = (-disc).sqrt() / 2.0;
        vec![x + y * re, y * im]
    }
}

/// Elements `a + b theta` with `|a|, |b| <= c` in the box (real images in
/// `(0, x_i]`, complex image of modulus at most `x`) by a plain double loop
/// in f64. Callers pick boxes with no points near the boundary.
pub fn dumb_box_points(k: &NumberField, bounds: &[f64], c: i128) -> Vec<Vec<i128>> {
    let (r, _) = k.signature();
    let mut out = Vec::new();
    for a in -c..=c {
        for b in -c..=c {
            let s = quadratic_sigma(k, &[a, b]);
            let inside = if r == 2 {
                s[0] > 0.0 && s[0] <= bounds[0] && s[1] > 0.0 && s[1] <= bounds[1]
            } else {
                s[0].hypot(s[1]) <= bounds[0]
            };
            if inside {
                out.push(vec![a, b]);
            }
        }
    }
    out.sort();
    out
}

/// Test polynomials per bundled field: a quadratic `X^2 - 4 theta`, a
/// quadratic with an inseparable reduction mod 2, and `X^3 - 2`.
pub fn test_polynomials(k: &NumberField) -> Vec<SievePolynomial> {
    let n = k.degree();
    let c = |v: i128| k.from_int(v);
    let mut polys = vec![SievePolynomial::x2_minus_4(k, &k.theta()).unwrap()];
    polys.push(SievePolynomial::new(k, vec![k.theta(), c(0), c(1)]).unwrap());
    polys.push(SievePolynomial::assume_irreducible(k, vec![c(-2), c(0), c(0), c(1)]).unwrap());
    assert!(polys
        .iter()
        .all(|p| p.coeffs().iter().all(|x| x.len() == n)));
    polys
}

/// Named orders of a bundled field, each with two polynomials whose
/// coefficients lie in the order.
pub fn order_cases(k: &NumberField) -> Vec<(SubOrder, SievePolynomial)> {
    let mut out = Vec::new();
    let names: Vec<String> = k.order_names().map(str::to_string).collect();
    for name in names {
        let o = k.named_order(&name).unwrap();
        let c0 = match name.as_str() {
            "Z[sqrt5]" => vec![-4, -8],
            "Z[3theta]" => vec![0, -3],
            "Z[2sqrt2]" => vec![0, -2],
            "Z[2i]" => vec![-2, -2],
            other => panic!("no test polynomial for {other}"),
        };
        let f = SievePolynomial::new(k, vec![c0, k.zero(), k.one()]).unwrap();
        let g = SievePolynomial::new(k, vec![k.from_int(-3), k.zero(), k.one()]).unwrap();
        out.push((o.clone(), f));
        out.push((o, g));
    }
    out
}

/// Contraction then extension is the identity on ideals coprime to the
/// conductor, and the contracted index equals the norm. Returns the number
/// of ideals checked.
pub fn check_round_trips(k: &NumberField, o: &SubOrder, bound: u128) -> usize {
    let mut checked = 0;
    for a in k.ideals_up_to_norm(bound).unwrap() {
        if !k.coprime(&a, o.conductor()) {
            continue;
        }
        let c = k.contract_ideal(&a, o);
        assert_eq!(c.index, a.norm(), "index of {a}");
        let direct = hnf::intersection(a.hnf(), o.basis(), k.degree());
        assert_eq!(hnf::det(&direct) as u128, a.norm() * o.index());
        let back = k.extend_contracted(&c, o).unwrap();
        assert_eq!(back, a);
        assert_eq!(k.contract_ideal(&back, o), c);
        checked += 1;
    }
    checked
}

pub fn random_basis(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    loop {
        let b: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect();
        if let Ok(l) = EmbeddedLattice::from_rows(b.clone()) {
            if l.det().abs() > 0.3 {
                return b;
            }
        }
    }
}

/// Points `c B` in the box by looping over the coefficient cube `[-c, c]^n`.
pub fn dumb_count(b: &[Vec<f64>], lo: &[f64], hi: &[f64], c: i64) -> u64 {
    let n = b.len();
    let mut count = 0;
    let mut idx = vec![-c; n];
    loop {
        let v: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|i| idx[i] as f64 * b[i][j]).sum())
            .collect();
        if v.iter()
            .zip(lo.iter().zip(hi))
            .all(|(x, (a, z))| a <= x && x <= z)
        {
            count += 1;
        }
        let mut j = 0;
        loop {
            if j == n {
                return count;
            }
            idx[j] += 1;
            if idx[j] <= c {
                break;
            }
            idx[j] = -c;
            j += 1;
        }
    }
}

/// One seeded lattice and box: returns `(count, vol/det, bound)`, checking
/// the count against the coefficient loop in dimension 2.
pub fn lattice_box_case(rng: &mut ChaCha8Rng, n: usize) -> (u64, f64, f64) {
    let b = random_basis(rng, n);
    let l = EmbeddedLattice::from_rows(b.clone())
        .unwrap()
        .with_minima()
        .unwrap();
    let lo: Vec<f64> = (0..n).map(|_| rng.gen_range(-6.0..0.0)).collect();
    let hi: Vec<f64> = lo.iter().map(|a| a + rng.gen_range(0.5..6.0)).collect();
    let count = count_in_box(&l, &lo, &hi).unwrap();
    if n == 2 {
        assert_eq!(count, dumb_count(&b, &lo, &hi, 60));
    }
    let vol: f64 = lo.iter().zip(&hi).map(|(a, z)| z - a).product();
    let side = lo.iter().zip(&hi).map(|(a, z)| z - a).fold(0.0, f64::max);
    let bound = widmer_bound(&l, 2 * n, side).unwrap();
    (count, vol / l.det().abs(), bound)
}

/// Random box with conjugate bounds equal, for one of a few signatures.
pub fn random_box(rng: &mut ChaCha8Rng) -> RegionBox {
    let sig = [(2, 0), (0, 1), (1, 1), (3, 0)][rng.gen_range(0..4)];
    let (r, s) = sig;
    let mut bounds: Vec<f64> = (0..r).map(|_| rng.gen_range(1.0..50.0)).collect();
    let cx: Vec<f64> = (0..s).map(|_| rng.gen_range(1.0..50.0)).collect();
    bounds.extend(&cx);
    bounds.extend(&cx);
    RegionBox::new(bounds, sig).unwrap()
}
