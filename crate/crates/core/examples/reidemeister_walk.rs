//! A seeded random walk of Reidemeister moves, checking that every
//! invariant stays put along the way.
//!
//!     cargo run --example reidemeister_walk [seed]

use std::collections::BTreeMap;

use vtangle::moves::{random_walk_with, WalkConfig};
use vtangle::poly::rat;
use vtangle::{parse, serialize, InvariantReport};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let d = parse("tangle 0 0\ncomponent K closed\nO1+ O2+ U1+ U2+\n").unwrap();
    let (a, b) = (rat(2, 3), rat(-1, 5));
    let before = InvariantReport::compute(&d, &a, &b).unwrap();

    let walk = random_walk_with(&d, &WalkConfig { steps: 300, chord_cap: 12 }, seed);
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    for m in &walk.moves {
        *kinds.entry(format!("{:?}", m.kind())).or_default() += 1;
    }
    println!("{kinds:?}");

    for (k, e) in walk.diagrams.iter().enumerate() {
        assert_eq!(InvariantReport::compute(e, &a, &b).unwrap(), before, "step {k}");
    }
    let last = walk.diagrams.last().unwrap();
    println!("after {} moves ({} crossings):\n{}", walk.moves.len(), last.chords.len(), serialize(last));
    println!("psc is still {}", before.p_sc);
}
