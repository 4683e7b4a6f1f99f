//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unitgen::arith::interval::{rat, to_f64};
use unitgen::builder::{
    belcher_criterion, belcher_table, build_tower, verify_unit_generation, StartOrder, TowerCaps,
};
use unitgen::cli::{run, EXIT_HYPOTHESIS};
use unitgen::density::{
    conductor_sum, density_gap_check, empirical_rows, error_exponent, euler_density,
    mfree_threshold, root_count, root_count_brute, root_count_order, root_count_order_brute,
    verify_chain, DensityParams, EmpiricalRow, SievePolynomial,
};
use unitgen::fields;
use unitgen::geometry::{count_coset, rescaling_det, RegionBox};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

/// Width, convergence and runtime checks shared by the first two criteria.
fn convergence(p: &DensityParams) -> Result<(BigRational, Vec<EmpiricalRow>, Duration), String> {
    let start = Instant::now();
    let (d, rows) = single_thread(|| {
        let d = euler_density(p, 10_000).map_err(|e| e.to_string())?;
        let mid = to_f64(&d.interval.mid());
        let rows = empirical_rows(p, &[100.0, 1000.0, 10_000.0], mid).map_err(|e| e.to_string())?;
        Ok::<_, String>((d, rows))
    })?;
    let took = start.elapsed();
    let width = d.interval.width();
    ensure(
        width <= rat(1, 1000),
        format!("interval width {} > 1e-3", to_f64(&width)),
    )?;
    ensure(
        rows[2].relative_error <= 0.15,
        format!("relative error {} at 1e4", rows[2].relative_error),
    )?;
    ensure(
        rows[2].relative_error <= rows[0].relative_error,
        format!(
            "error grew: {} at 1e2, {} at 1e4",
            rows[0].relative_error, rows[2].relative_error
        ),
    )?;
    ensure(took <= Duration::from_secs(300), format!("took {took:?}"))?;
    Ok((d.interval.mid(), rows, took))
}

fn describe(mid: &BigRational, rows: &[EmpiricalRow], took: Duration) -> String {
    let errs: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.4}", r.relative_error))
        .collect();
    format!(
        "D ~ {:.6}, rel err {} at x = 1e2, 1e3, 1e4, {:.1}s",
        to_f64(mid),
        errs.join(" / "),
        took.as_secs_f64()
    )
}

fn criterion_1() -> Outcome {
    let k = fields::golden();
    let f = SievePolynomial::x2_minus_4(&k, &k.theta()).map_err(|e| e.to_string())?;
    let p = DensityParams::new(&k, k.maximal_order(), f, vec![], 2).map_err(|e| e.to_string())?;
    let (mid, rows, took) = convergence(&p)?;
    Ok(describe(&mid, &rows, took))
}

fn criterion_2() -> Outcome {
    let k = fields::golden();
    let o = k.named_order("Z[sqrt5]").unwrap();
    let eta = [1, 2];
    let two = k.primes_above(2).unwrap().to_vec();
    let f = SievePolynomial::x2_minus_4(&k, &eta).unwrap();
    let p = DensityParams::new(&k, o.clone(), f, two.clone(), 2).map_err(|e| e.to_string())?;
    let csum = conductor_sum(&p).map_err(|e| e.to_string())?;
    ensure(csum == rat(1, 2), format!("conductor sum {csum}"))?;
    let gap = density_gap_check(&k, &o, &eta, &two, 1000).map_err(|e| e.to_string())?;
    ensure(
        gap.lhs == rat(1, 4) && gap.rhs == rat(3, 4),
        format!("gap {} vs {}", gap.lhs, gap.rhs),
    )?;
    ensure(gap.strict_gap, "gap not strict")?;
    let (mid, rows, took) = convergence(&p)?;
    Ok(format!(
        "conductor sum 1/2, gap 1/4 < 3/4, {}",
        describe(&mid, &rows, took)
    ))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for k in common::bundled_fields() {
        let ideals = k.ideals_up_to_norm(200).unwrap();
        for f in common::test_polynomials(&k) {
            for a in &ideals {
                let (x, y) = (
                    root_count(&k, &f, a).unwrap(),
                    root_count_brute(&k, &f, a).unwrap(),
                );
                ensure(
                    x == y,
                    format!("{} {} {a}: {x} vs {y}", k.name(), f.format(&k)),
                )?;
                checked += 1;
            }
        }
        for (o, f) in common::order_cases(&k) {
            for a in &ideals {
                let x = root_count_order(&k, &f, a, &o).unwrap();
                let y = root_count_order_brute(&k, &f, a, &o).unwrap();
                ensure(
                    x == y,
                    format!("{} order {} {a}: {x} vs {y}", k.name(), f.format(&k)),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} root counts agree"))
}

fn criterion_4() -> Outcome {
    let k = fields::golden();
    let mut checked = 0;
    for name in ["Z[sqrt5]", "Z[3theta]"] {
        let o = k.named_order(name).unwrap();
        checked += common::check_round_trips(&k, &o, 500);
    }
    Ok(format!(
        "{checked} coprime ideals of norm <= 500 round-trip with index = norm"
    ))
}

fn criterion_5() -> Outcome {
    let k = fields::golden();
    let cases = [
        (k.named_order("Z[sqrt5]").unwrap(), rat(2, 1), true),
        (k.named_order("Z[3theta]").unwrap(), rat(3, 1), true),
        (
            k.order_from_rows(&[vec![1, 0], vec![0, 4]]).unwrap(),
            rat(2, 1),
            false,
        ),
    ];
    for (o, bound, equal) in cases {
        let b = k.index_lower_bound(&o).unwrap();
        let got = rat(*b.bound.numer(), *b.bound.denom());
        ensure(got == bound, format!("index {}: bound {got}", o.index()))?;
        ensure(got <= rat(o.index() as i128, 1), "bound exceeds the index")?;
        ensure(
            b.attained == equal && b.conductor_divides == equal,
            format!("index {}: equality flag", o.index()),
        )?;
    }
    Ok(
        "bounds 2, 3, 2 against indices 2, 3, 4; equality exactly when the conductor divides"
            .into(),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let n = 2 + case % 2;
        let (count, main, bound) = common::lattice_box_case(&mut rng, n);
        let dev = (count as f64 - main).abs();
        ensure(dev <= bound, format!("case {case}: {dev} > {bound}"))?;
        worst = worst.max(dev / bound);
    }
    let mut instances = 0;
    for k in common::bundled_fields() {
        let ok = k.maximal_order();
        for x in [10.0, 100.0, 1000.0, 10_000.0] {
            let bx = RegionBox::uniform(x, k.signature()).unwrap();
            let c = count_coset(&k, &k.zero(), &k.unit_ideal(), &ok, &bx).unwrap();
            ensure(c.deviation <= c.error_bound, format!("{} x={x}", k.name()))?;
            instances += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let d = rescaling_det(&common::random_box(&mut rng));
        ensure((d - 1.0).abs() < 1e-12, format!("det T = {d}"))?;
    }
    Ok(format!("100 random pairs (max dev/bound {worst:.2e}), {instances} sigma(O_K) boxes, 100 det T checks"))
}

fn criterion_7() -> Outcome {
    let k = fields::golden();
    let start = Instant::now();
    let o = k.named_order("Z[sqrt5]").unwrap();
    let t = build_tower(&k, &StartOrder::Order(o), &[1, 2], TowerCaps::default())
        .map_err(|e| e.to_string())?;
    let r = verify_unit_generation(&k, &t).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(
        t.steps.len() == 1 && t.steps[0].omega == k.theta(),
        "expected one step with omega = theta",
    )?;
    ensure(t.final_index == 1, "final index")?;
    ensure(
        r.eta_units
            && r.omega_identity
            && r.reaches_maximal
            && r.discriminants_coprime
            && r.step_count_bound,
        format!("{:?}", r.failures),
    )?;
    ensure(took <= Duration::from_secs(1), format!("took {took:?}"))?;
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        ["unitgen", "tower", "--field", "qsqrt2"],
        &mut out,
        &mut err,
    );
    let err = String::from_utf8(err).unwrap();
    ensure(
        code == EXIT_HYPOTHESIS,
        format!("Q(sqrt2) exit code {code}"),
    )?;
    ensure(err.contains("sqrt(5)"), "remedy not named")?;
    Ok(format!(
        "one step omega = theta, five checks pass in {:.3}s; Q(sqrt2) exits 2 with remedy",
        took.as_secs_f64()
    ))
}

fn criterion_8() -> Outcome {
    let mut cases = 0;
    for n in 2..=6u32 {
        for g in 1..=6u32 {
            for m in mfree_threshold(g)..=g + 3 {
                let d = error_exponent(n, g, m).map_err(|e| format!("n={n} g={g} m={m}: {e}"))?;
                ensure(
                    verify_chain(n, g, m, &d),
                    format!("chain fails at n={n} g={g} m={m}"),
                )?;
                ensure(d.u > 0.into(), format!("u = {} at n={n} g={g} m={m}", d.u))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} parameter sets verify with u > 0"))
}

fn criterion_9() -> Outcome {
    for d in [-1, -3, 2, 5] {
        ensure(belcher_criterion(d) == Ok(true), format!("d = {d}"))?;
    }
    let a = belcher_table(100);
    ensure(a == belcher_table(100), "table changed between runs")?;
    let mut out = Vec::new();
    let code = run(
        ["unitgen", "belcher", "--bound", "100"],
        &mut out,
        &mut Vec::new(),
    );
    ensure(code == 0, "belcher subcommand failed")?;
    let fixture = include_str!("fixtures/belcher_table.tsv");
    ensure(out == fixture.as_bytes(), "report differs from the fixture")?;
    let yes: Vec<i64> = a.iter().filter(|r| r.unit_generated).map(|r| r.d).collect();
    let want = [-3, -1, 2, 3, 5, 10, 13, 15, 21, 26, 29, 35, 53, 77, 82, 85];
    ensure(yes == want, format!("unit generated set {yes:?}"))?;
    Ok(format!(
        "{} squarefree d, {} unit generated, fixture matches",
        a.len(),
        yes.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("density convergence, maximal order", criterion_1),
        ("density convergence, Z[sqrt5]", criterion_2),
        ("root counts against brute force", criterion_3),
        ("contraction and extension of ideals", criterion_4),
        ("index lower bound", criterion_5),
        ("lattice point error bound", criterion_6),
        ("tower pipeline", criterion_7),
        ("error exponents", criterion_8),
        ("quadratic unit generation table", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
