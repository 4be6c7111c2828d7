//! Every invariant of the clasp, at a few choices of the weights `(a, b)`.
//!
//!     cargo run --example compute_invariants

use vtangle::poly::parse_rational;
use vtangle::{parse, InvariantReport};

const CLASP: &str = "\
tangle 2 2
component A long T1:in B1:out
O1+ U2+
component B long T2:in B2:out
U1+ O2+
";

fn main() {
    let d = parse(CLASP).expect("valid diagram");
    for (a, b) in [("1", "1"), ("1", "2"), ("2/3", "-1/5")] {
        let (a, b) = (parse_rational(a).unwrap(), parse_rational(b).unwrap());
        let r = InvariantReport::compute(&d, &a, &b).unwrap();
        println!("{}", r.to_text());
    }

    // JSON is what `vtangle compute --format json` prints
    let r = InvariantReport::compute(&d, &parse_rational("1").unwrap(), &parse_rational("2").unwrap()).unwrap();
    println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
}
