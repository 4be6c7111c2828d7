//! Stacking string links and checking that the invariants add.
//!
//!     cargo run --example connected_sum

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vtangle::ops::connect;
use vtangle::poly::rat;
use vtangle::random::random_string_link;
use vtangle::{serialize, Invariant};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let t = random_string_link(&mut rng, 3, 4);
    let u = random_string_link(&mut rng, 3, 5);
    let g = connect(&t, &u).unwrap();
    println!("T:\n{}\nU:\n{}\nT#U:\n{}", serialize(&t), serialize(&u), serialize(&g.diagram));
    println!("relations: {:?}", g.relations.pairs);

    for inv in Invariant::all(&rat(1, 2), &rat(3, 1)) {
        let whole = inv.eval(&g.diagram).unwrap();
        let parts = &g.lift_upper(&inv.eval(&t).unwrap()) + &g.lift_lower(&inv.eval(&u).unwrap());
        println!("{:>4}: {whole}   (sum of parts: {parts})", inv.name());
        assert_eq!(whole, parts);
    }

    // a cup stacked on a cap closes up into a circle
    let cap = vtangle::parse("tangle 0 2\ncomponent C long B1:in B2:out\n").unwrap();
    let cup = vtangle::parse("tangle 2 0\ncomponent D long T2:in T1:out\n").unwrap();
    print!("{}", serialize(&connect(&cap, &cup).unwrap().diagram));
}
