//! Parameters of the error exponent over a range of degrees.

use unitgen::density::{error_exponent, mfree_threshold, verify_chain};

fn main() -> unitgen::Result<()> {
    println!("n\tg\tm\tl\tc\teps\tu\tchain");
    for n in 2..=4u32 {
        for g in 1..=6u32 {
            for m in mfree_threshold(g)..=g + 3 {
                let d = error_exponent(n, g, m)?;
                let ok = verify_chain(n, g, m, &d);
                println!("{n}\t{g}\t{m}\t{}\t{}\t{}\t{}\t{ok}", d.l, d.c, d.eps, d.u);
            }
        }
    }
    Ok(())
}
