//! Two-component links with any prescribed pair of virtual linking
//! numbers, and a pair that `p_lk` cannot tell apart but `p_lkL` can.
//!
//!     cargo run --example linking_generator

use vtangle::invariants::vlk_matrix;
use vtangle::ops::{gen_vlk_braid, gen_vlk_link};
use vtangle::poly::int;
use vtangle::{p_lk, p_lk_l, serialize, wriggle};

fn main() {
    let d = gen_vlk_link(3, 2).unwrap();
    print!("{}", serialize(&d));
    let m = vlk_matrix(&d);
    println!("vlk(1,2) = {}, vlk(2,1) = {}, wriggle = {}\n", m[0][1], m[1][0], wriggle(&d, 0, 1).unwrap());

    // a*2 + b*(-1) = 0 at (a, b) = (1, 2)
    let s = gen_vlk_braid(2, 1).unwrap();
    let trivial = gen_vlk_braid(0, 0).unwrap();
    let (a, b) = (int(1), int(2));
    for (name, x) in [("witness", &s), ("identity", &trivial)] {
        println!("{name}: plk = {}, plkL = {}", p_lk(x, &a, &b).unwrap(), p_lk_l(x, &a, &b).unwrap());
    }
}
