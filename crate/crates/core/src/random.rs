//! Seeded random Gauss diagrams for tests, examples and fuzzing.
//!
//! Every Gauss diagram is a virtual tangle, so chords can be dropped
//! anywhere on the skeleton.

use rand::Rng;

use crate::diagram::{BoundaryPoint, Chord, Component, Direction, End, TangleDiagram, Visit};
use crate::moves::gaps;
use crate::ops::identity_braid;

/// Adds `classical` random crossings and `singular` random double points to
/// `skeleton`, each endpoint at a uniformly chosen gap.
pub fn scatter_chords<R: Rng>(
    rng: &mut R,
    skeleton: &TangleDiagram,
    classical: usize,
    singular: usize,
) -> TangleDiagram {
    let mut d = skeleton.clone();
    if d.components.is_empty() {
        return d;
    }
    for k in 0..classical + singular {
        let label = d.fresh_label();
        let s: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let chord = if k < classical {
            Chord::classical(label, s, if rng.gen_bool(0.5) { End::A } else { End::B })
        } else {
            Chord::singular(label, s)
        };
        let idx = d.chords.len();
        d.chords.push(chord);
        for end in [End::A, End::B] {
            let gs = gaps(&d);
            let g = gs[rng.gen_range(0..gs.len())];
            d.components[g.component].visits.insert(g.index, Visit { chord: idx, end });
        }
    }
    d
}

pub fn random_knot<R: Rng>(rng: &mut R, chords: usize) -> TangleDiagram {
    let mut s = TangleDiagram::new(0, 0);
    s.components.push(Component::closed("K", vec![]));
    scatter_chords(rng, &s, chords, 0)
}

pub fn random_long_knot<R: Rng>(rng: &mut R, chords: usize) -> TangleDiagram {
    scatter_chords(rng, &identity_braid(1), chords, 0)
}

pub fn random_string_link<R: Rng>(rng: &mut R, strands: usize, chords: usize) -> TangleDiagram {
    scatter_chords(rng, &identity_braid(strands), chords, 0)
}

pub fn random_link<R: Rng>(rng: &mut R, comps: usize, chords: usize) -> TangleDiagram {
    let mut s = TangleDiagram::new(0, 0);
    for i in 1..=comps {
        s.components.push(Component::closed(format!("L{i}"), vec![]));
    }
    scatter_chords(rng, &s, chords, 0)
}

/// Random skeleton mixing long and closed components: 1 to 3 long strands
/// with endpoints spread over the top and bottom edges, plus 0 to 2 circles.
pub fn random_skeleton<R: Rng>(rng: &mut R) -> TangleDiagram {
    let long = rng.gen_range(1..=3);
    let circles = rng.gen_range(0..=2);
    // 2*long endpoints, each on the top or bottom edge
    let sides: Vec<bool> = (0..2 * long).map(|_| rng.gen_bool(0.5)).collect();
    let top = sides.iter().filter(|&&t| t).count();
    let bottom = 2 * long - top;
    let mut points: Vec<(bool, usize)> =
        (1..=top).map(|i| (true, i)).chain((1..=bottom).map(|i| (false, i))).collect();
    for i in (1..points.len()).rev() {
        points.swap(i, rng.gen_range(0..=i));
    }
    let mut d = TangleDiagram::new(top, bottom);
    for (k, pair) in points.chunks(2).enumerate() {
        let bp = |(is_top, idx): (bool, usize), dir| {
            if is_top {
                BoundaryPoint::top(idx, dir)
            } else {
                BoundaryPoint::bottom(idx, dir)
            }
        };
        d.components.push(Component::long(
            format!("S{}", k + 1),
            bp(pair[0], Direction::In),
            bp(pair[1], Direction::Out),
            vec![],
        ));
    }
    for i in 1..=circles {
        d.components.push(Component::closed(format!("C{i}"), vec![]));
    }
    d
}

/// Random tangle on a random skeleton with up to `max_chords` crossings.
pub fn random_tangle<R: Rng>(rng: &mut R, max_chords: usize) -> TangleDiagram {
    let s = random_skeleton(rng);
    let n = rng.gen_range(0..=max_chords);
    scatter_chords(rng, &s, n, 0)
}
