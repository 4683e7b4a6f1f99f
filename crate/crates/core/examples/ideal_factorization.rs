//! Splitting of small primes and factorization of a few ideals in Q(sqrt5).

use unitgen::fields;

fn main() -> unitgen::Result<()> {
    let k = fields::golden();
    for p in [2u128, 3, 5, 11, 19, 29] {
        let primes = k.primes_above(p)?;
        let shape: Vec<String> = primes
            .iter()
            .map(|pr| format!("f={} e={}", pr.residue_degree, pr.ramification))
            .collect();
        println!("{p:>3}: {}", shape.join(", "));
    }
    for a in [vec![-3, -7], vec![6, 0], vec![4, 7]] {
        let fac = k.factor_element(&a)?;
        let parts: Vec<String> = fac
            .iter()
            .map(|(pr, e)| format!("({}, N={})^{e}", pr.p, pr.norm()))
            .collect();
        println!("({}) = {}", k.format_element(&a), parts.join(" "));
    }
    let ideals = k.ideals_up_to_norm(50)?;
    let squarefree = ideals
        .iter()
        .filter(|a| k.mobius(a).map(|m| m != 0).unwrap_or(false))
        .count();
    println!(
        "{} ideals of norm <= 50, {squarefree} squarefree",
        ideals.len()
    );
    Ok(())
}
