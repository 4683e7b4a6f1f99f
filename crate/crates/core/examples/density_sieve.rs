//! Density of `alpha` in `Q(sqrt5)` with `alpha^2 - 4 theta` squarefree,
//! against direct counts.

use unitgen::density::{density_report, DensityParams, SievePolynomial};
use unitgen::fields;

fn main() -> unitgen::Result<()> {
    let k = fields::golden();
    let f = SievePolynomial::x2_minus_4(&k, &k.theta())?;
    let p = DensityParams::new(&k, k.maximal_order(), f, vec![], 2)?;
    let r = density_report(&p, 10_000, &[100.0, 1000.0, 10_000.0])?;
    println!("D in {}", r.density);
    for row in &r.empirical {
        println!(
            "x={:>8} N={:>6} N/x={:.6} rel.err={:.4}",
            row.x, row.count, row.ratio, row.relative_error
        );
    }
    println!("exponents: {}", r.exponents);
    Ok(())
}
