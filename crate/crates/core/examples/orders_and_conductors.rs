//! Suborders of Q(sqrt5), their conductors and the index bound over the
//! conductor primes.

use unitgen::fields;

fn main() -> unitgen::Result<()> {
    let k = fields::golden();
    for name in k.order_names().collect::<Vec<_>>() {
        let o = k.named_order(name)?;
        let b = k.index_lower_bound(&o)?;
        println!(
            "{name}: index {}, conductor {}, bound {} (attained {}, conductor divides {})",
            o.index(),
            o.conductor(),
            b.bound,
            b.attained,
            b.conductor_divides
        );
    }
    let o = k.named_order("Z[sqrt5]")?;
    let a = k.principal_ideal(&[3, 0])?;
    let c = k.contract_ideal(&a, &o);
    let back = k.extend_contracted(&c, &o)?;
    println!(
        "(3) ∩ O has index {} in O; extends back to (3): {}",
        c.index,
        back == a
    );
    let o2 = k.adjoin(&o, &k.theta())?;
    println!("Z[sqrt5][theta] has index {}", o2.index());
    Ok(())
}
