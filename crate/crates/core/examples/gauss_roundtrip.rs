//! Reading and writing the Gauss-code text format, and what a parse error
//! looks like.
//!
//!     cargo run --example gauss_roundtrip

use vtangle::{equal_diagrams, parse, serialize};

fn main() {
    let text = "\
# a long virtual trefoil
tangle 1 1
component K long T1:in B1:out
O1+ O2+ U1+ U2+
";
    let d = parse(text).unwrap();
    let out = serialize(&d);
    print!("{out}");
    assert!(equal_diagrams(&d, &parse(&out).unwrap()));

    // closed components compare up to rotation
    let a = parse("tangle 0 0\ncomponent K closed\nO1+ O2+ U1+ U2+\n").unwrap();
    let b = parse("tangle 0 0\ncomponent K closed\nU1+ U2+ O1+ O2+\n").unwrap();
    println!("rotated circle equal: {}", equal_diagrams(&a, &b));

    for bad in [
        "tangle 0 0\ncomponent K closed\nO1+ U2+\n",
        "tangle 0 0\ncomponent K closed\nO1+ U1-\n",
        "tangle 1 1\ncomponent K long T1:in T1:out\n",
    ] {
        println!("{}", parse(bad).unwrap_err());
    }
}
