//! Lattice points of cosets in boxes against the volume term and the error
//! bound from successive minima.

use unitgen::fields;
use unitgen::geometry::{count_coset, embed_lattice, successive_minima, RegionBox};

fn main() -> unitgen::Result<()> {
    let k = fields::golden();
    let ok = k.maximal_order();
    let o = k.named_order("Z[sqrt5]")?;
    let three = k.principal_ideal(&[3, 0])?;
    let l = embed_lattice(&k, ok.basis())?;
    println!(
        "minima of sigma(O_K): {:?}, det {}",
        successive_minima(&l)?,
        l.det()
    );
    for x in [10.0, 100.0, 1000.0, 10000.0] {
        let bx = RegionBox::uniform(x, k.signature())?;
        let c = count_coset(&k, &[1, 0], &three, &o, &bx)?;
        println!(
            "x={x:>7} count={:>5} main={:>10.3} |dev|={:>7.3} bound={:.3e}",
            c.count, c.main_term, c.deviation, c.error_bound
        );
    }
    let bx = RegionBox::new(vec![5.0, 1.5], k.signature())?;
    let c = count_coset(&k, &k.zero(), &k.unit_ideal(), &ok, &bx)?;
    println!(
        "skewed box (5, 1.5): count {} main {:.3}",
        c.count, c.main_term
    );
    Ok(())
}
