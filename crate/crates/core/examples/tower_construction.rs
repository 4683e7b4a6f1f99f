//! The quadratic tower over Z[sqrt5] and its verification, then the
//! rejection of Q(sqrt2).

use unitgen::builder::{build_tower, verify_unit_generation, StartOrder, TowerCaps};
use unitgen::fields;

fn main() -> unitgen::Result<()> {
    let k = fields::golden();
    let eta = vec![1, 2];
    let start = StartOrder::Units(vec![eta.clone()]);
    let t = build_tower(&k, &start, &eta, TowerCaps::default())?;
    println!("start index {}, {} step(s)", t.start_index, t.steps.len());
    for s in &t.steps {
        println!(
            "  X^2 - ({})X + ({}), disc {} of norm {}",
            k.format_element(&s.omega),
            k.format_element(&s.eta),
            k.format_element(&s.disc_element),
            s.disc_element_norm
        );
    }
    let r = verify_unit_generation(&k, &t)?;
    println!("verification: {r:?}");

    let k2 = fields::sqrt2();
    let o = k2.named_order("Z[2sqrt2]")?;
    match build_tower(&k2, &StartOrder::Order(o), &[1, 1], TowerCaps::default()) {
        Err(e) => println!("{}: {e}", k2.name()),
        Ok(_) => println!("{}: unexpectedly built", k2.name()),
    }
    Ok(())
}
