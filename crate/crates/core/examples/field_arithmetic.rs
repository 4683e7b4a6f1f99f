//! Elements of the bundled fields: products, norms, inverses of units and
//! their embeddings.

use unitgen::fields;

fn main() -> unitgen::Result<()> {
    for k in [fields::golden(), fields::sqrt2(), fields::gaussian()] {
        println!(
            "{}  disc={}  signature={:?}",
            k.name(),
            k.disc(),
            k.signature()
        );
        let a = vec![3, 2];
        let b = k.theta();
        let ab = k.mul(&a, &b);
        println!(
            "  ({}) * ({}) = {}",
            k.format_element(&a),
            k.format_element(&b),
            k.format_element(&ab)
        );
        println!(
            "  N({}) = {}, Tr = {}",
            k.format_element(&a),
            k.norm(&a),
            k.trace(&a)
        );
        for u in k.units() {
            let inv = k.inverse(u).expect("unit");
            println!(
                "  unit {} with inverse {}",
                k.format_element(u),
                k.format_element(&inv)
            );
        }
        let s = k.embed_sigma(&a, 64)?;
        println!("  sigma({}) = {:?}", k.format_element(&a), s);
    }
    Ok(())
}
