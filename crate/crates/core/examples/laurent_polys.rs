//! Exact Laurent polynomials: arithmetic, canonical text and JSON terms.
//!
//!     cargo run --example laurent_polys

use vtangle::poly::{rat, LaurentPoly};

fn main() {
    let p = LaurentPoly::parse("1 t1 t2^-1 + 2 t1^-1 t2", 2).unwrap();
    let q = LaurentPoly::mono(rat(-1, 3), &[1, -1], 2).unwrap();
    let s = &p + &q;
    println!("p + q = {s}");
    println!("p - q = {}", &p - &q);
    println!("2p/5 = {}", p.scale(&rat(2, 5)));
    println!("s(1, 1) = {}", s.eval_all_ones());
    println!("terms: {}", serde_json::to_string(&s.to_terms()).unwrap());

    // rename t1 -> t2 and t2 -> t3 inside three variables
    println!("{}", s.rename_vars(&[1, 2], 3));
    println!("{}", LaurentPoly::parse("3 + 1 t1 - 1 t1^-2 + 4 t1^2", 1).unwrap());
}
