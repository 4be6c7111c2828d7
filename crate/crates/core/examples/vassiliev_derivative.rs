//! Resolving double points: the index polynomials have order exactly one.
//!
//!     cargo run --example vassiliev_derivative

use vtangle::poly::int;
use vtangle::singular::{derivative, resolutions, resolve};
use vtangle::{p_sc, parse, serialize, Invariant};

fn main() {
    let trefoil = parse("tangle 0 0\ncomponent K closed\nS1+ O2+ S1+ U2+\n").unwrap();
    for r in resolutions(&trefoil) {
        let d = resolve(&trefoil, &r).unwrap();
        println!("{:?} (weight {:+}):\n{}  psc = {}", r.assignment, r.weight(), serialize(&d), p_sc(&d).unwrap());
    }
    println!("first derivative: {}", derivative(&trefoil, &Invariant::Psc).unwrap());

    let two = parse(
        "tangle 2 2
component A long T1:in B1:out
S1+ O2- S3+ U4+
component B long T2:in B2:out
S1+ U2- O4+ S3+
",
    )
    .unwrap();
    for inv in Invariant::all(&int(3), &int(-1)) {
        println!("{} with two double points: {}", inv.name(), derivative(&two, &inv).unwrap());
    }
}
