//! Quadratic fields with rings of integers generated by units, |d| <= 100.

use unitgen::builder::belcher_table;

fn main() {
    let t = belcher_table(100);
    let yes: Vec<String> = t
        .iter()
        .filter(|r| r.unit_generated)
        .map(|r| r.d.to_string())
        .collect();
    println!("{} squarefree d, {} unit generated:", t.len(), yes.len());
    println!("{}", yes.join(" "));
}
