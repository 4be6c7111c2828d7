//! Reidemeister moves as Gauss-diagram rewrites.
//!
//! * R1 inserts or removes a chord whose two endpoints are neighbours on one
//!   strand. Any sign and either end over.
//! * R2 inserts or removes two chords of opposite sign whose over endpoints
//!   are neighbours and whose under endpoints are neighbours. The under
//!   pair may come in either order (parallel or antiparallel strands).
//! * R3 reverses the order of three neighbouring endpoint pairs that form a
//!   triangle of chords `x = (a,b)`, `y = (a,c)`, `z = (b,c)` on strand
//!   pieces `a`, `b`, `c`.
//!
//! The R3 pattern is checked against the braid form of the move with all
//! strands oriented downwards: in `σ1σ2σ1 = σ2σ1σ2` the pieces read
//! `a: x y`, `b: x z`, `c: y z` before and `a: y x`, `b: z x`, `c: z y`
//! after, and a crossing is positive exactly when the strand starting on
//! the left is over. Reversing a strand flips the signs of both its
//! crossings and the order of its pair; the over relation must not be
//! cyclic. A triangle is accepted if some labelling of its pieces matches
//! either side under these rules.
//!
//! Virtual moves are identities on Gauss diagrams and do not appear.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Chord, ChordKind, End, TangleDiagram, Visit};

pub const DEFAULT_CHORD_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Insert,
    R1Remove,
    R2Insert,
    R2Remove,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] =
        [MoveKind::R1Insert, MoveKind::R1Remove, MoveKind::R2Insert, MoveKind::R2Remove, MoveKind::R3];
}

/// Insertion point: new visits go before position `index` of `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gap {
    pub component: usize,
    pub index: usize,
}

/// Two neighbouring visits `first` then `second` along a strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub component: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSite {
    R1Insert { at: Gap, sign: i8, over: End },
    R1Remove { chord: String },
    /// Chord X gets sign `sign`, chord Y gets `-sign`. Both have end A at
    /// `first` (X then Y) and end B at `second` (X then Y, or Y then X when
    /// `antiparallel`). `over` picks which end carries both over passages.
    R2Insert { first: Gap, second: Gap, sign: i8, over: End, antiparallel: bool },
    R2Remove { chords: [String; 2] },
    R3 { pieces: [Piece; 3], chords: [String; 3] },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Insert { .. } => MoveKind::R1Insert,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Insert { .. } => MoveKind::R2Insert,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move site does not apply to this diagram: {0:?}")]
    StaleSite(Box<MoveSite>),
}

/// Every insertion point. A closed component with `k > 0` visits has `k`
/// gaps, a long one `k + 1`.
pub fn gaps(d: &TangleDiagram) -> Vec<Gap> {
    let mut out = Vec::new();
    for (ci, c) in d.components.iter().enumerate() {
        let k = c.visits.len();
        let count = if c.is_closed() { k.max(1) } else { k + 1 };
        out.extend((0..count).map(|index| Gap { component: ci, index }));
    }
    out
}

fn next_pos(d: &TangleDiagram, ci: usize, p: usize) -> Option<usize> {
    let c = &d.components[ci];
    let k = c.visits.len();
    if p + 1 < k {
        Some(p + 1)
    } else if c.is_closed() && k >= 2 {
        Some(0)
    } else {
        None
    }
}

/// Ordered neighbouring pairs of visits along every strand.
pub fn pieces(d: &TangleDiagram) -> Vec<Piece> {
    let mut out = Vec::new();
    for (ci, c) in d.components.iter().enumerate() {
        for p in 0..c.visits.len() {
            if let Some(q) = next_pos(d, ci, p) {
                out.push(Piece { component: ci, first: p, second: q });
            }
        }
    }
    out
}

fn classical(d: &TangleDiagram, k: usize) -> Option<(i8, End)> {
    match d.chords[k].kind {
        ChordKind::Classical { sign, over } => Some((sign, over)),
        ChordKind::Singular { .. } => None,
    }
}

fn r1_removable(d: &TangleDiagram, k: usize, ends: &[[(usize, usize); 2]]) -> bool {
    let [a, b] = ends[k];
    classical(d, k).is_some() && a.0 == b.0 && d.components[a.0].adjacent(a.1, b.1)
}

fn r2_removable(d: &TangleDiagram, x: usize, y: usize, ends: &[[(usize, usize); 2]]) -> bool {
    let (Some((sx, ox)), Some((sy, oy))) = (classical(d, x), classical(d, y)) else { return false };
    if x == y || sx != -sy {
        return false;
    }
    let near = |p: (usize, usize), q: (usize, usize)| p.0 == q.0 && d.components[p.0].adjacent(p.1, q.1);
    let (xo, xu) = (ends[x][ox as usize], ends[x][ox.other() as usize]);
    let (yo, yu) = (ends[y][oy as usize], ends[y][oy.other() as usize]);
    near(xo, yo) && near(xu, yu)
}

// Chord labels of a candidate triangle, or None if the pieces overlap.
fn triangle_chords(d: &TangleDiagram, ps: &[Piece; 3]) -> Option<[usize; 3]> {
    let mut locs = Vec::with_capacity(6);
    for p in ps {
        for q in [p.first, p.second] {
            if locs.contains(&(p.component, q)) {
                return None;
            }
            locs.push((p.component, q));
        }
    }
    let chord_at = |p: &Piece| {
        let v = &d.components[p.component].visits;
        (v[p.first].chord, v[p.second].chord)
    };
    let pairs = ps.map(|p| chord_at(&p));
    let mut all: Vec<usize> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != 3 || pairs.iter().any(|&(u, v)| u == v) {
        return None;
    }
    Some([all[0], all[1], all[2]])
}

fn r3_matches(d: &TangleDiagram, ps: &[Piece; 3]) -> bool {
    let Some(chords) = triangle_chords(d, ps) else { return false };
    let mut data = HashMap::new();
    for &k in &chords {
        let Some((sign, over)) = classical(d, k) else { return false };
        data.insert(k, (sign, over));
    }
    let ends = d.endpoints();
    let order: Vec<(usize, usize)> = ps
        .iter()
        .map(|p| {
            let v = &d.components[p.component].visits;
            (v[p.first].chord, v[p.second].chord)
        })
        .collect();
    let piece_of = |loc: (usize, usize)| {
        ps.iter().position(|p| p.component == loc.0 && (p.first == loc.1 || p.second == loc.1))
    };
    // chord between pieces (l, r) and whether l is over
    let chord_between = |l: usize, r: usize| -> Option<(usize, i8, bool)> {
        chords.iter().find_map(|&k| {
            let [ea, eb] = ends[k];
            let (pa, pb) = (piece_of(ea)?, piece_of(eb)?);
            if (pa, pb) != (l, r) && (pa, pb) != (r, l) {
                return None;
            }
            let (sign, over) = data[&k];
            let over_piece = if over == End::A { pa } else { pb };
            Some((k, sign, over_piece == l))
        })
    };
    for roles in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let [a, b, c] = roles;
        let (Some(x), Some(y), Some(z)) = (chord_between(a, b), chord_between(a, c), chord_between(b, c))
        else {
            continue;
        };
        // the over relation among pieces must be a linear order
        if x.2 == z.2 && y.2 != x.2 {
            continue;
        }
        let templates = [
            [(x.0, y.0), (x.0, z.0), (y.0, z.0)],
            [(y.0, x.0), (z.0, x.0), (z.0, y.0)],
        ];
        for t in templates {
            let mut eps = [0i8; 3];
            let mut ok = true;
            for (slot, piece) in [a, b, c].into_iter().enumerate() {
                let (u, v) = t[slot];
                eps[slot] = if order[piece] == (u, v) {
                    1
                } else if order[piece] == (v, u) {
                    -1
                } else {
                    ok = false;
                    0
                };
            }
            if !ok {
                continue;
            }
            let expect = |left_over: bool, el: i8, er: i8| if left_over { el * er } else { -el * er };
            if x.1 == expect(x.2, eps[0], eps[1])
                && y.1 == expect(y.2, eps[0], eps[2])
                && z.1 == expect(z.2, eps[1], eps[2])
            {
                return true;
            }
        }
    }
    false
}

fn r3_sites(d: &TangleDiagram) -> Vec<MoveSite> {
    let ps = pieces(d);
    let key = |p: &Piece| {
        let v = &d.components[p.component].visits;
        let (u, w) = (v[p.first].chord, v[p.second].chord);
        (u.min(w), u.max(w))
    };
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, p) in ps.iter().enumerate() {
        by_pair.entry(key(p)).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        let (x, y) = key(p);
        if x == y {
            continue;
        }
        // p carries {x, y}; look for a piece {x, z} with z > y and then {y, z}
        for (j, q) in ps.iter().enumerate() {
            let (u, v) = key(q);
            let z = if u == x && v != y { v } else if v == x && u != y { u } else { continue };
            if z <= y || u == v {
                continue;
            }
            let Some(ls) = by_pair.get(&(y.min(z), y.max(z))) else { continue };
            for &l in ls {
                let cand = [ps[i], ps[j], ps[l]];
                if r3_matches(d, &cand) {
                    let chords = [x, y, z].map(|k| d.chords[k].label.clone());
                    out.push(MoveSite::R3 { pieces: cand, chords });
                }
            }
        }
    }
    out
}

/// All legal applications of one kind of move, in a deterministic order.
pub fn enumerate_sites(d: &TangleDiagram, kind: MoveKind) -> Vec<MoveSite> {
    let ends = d.endpoints();
    match kind {
        MoveKind::R1Insert => gaps(d)
            .into_iter()
            .flat_map(|at| {
                [(1, End::A), (1, End::B), (-1, End::A), (-1, End::B)]
                    .map(|(sign, over)| MoveSite::R1Insert { at, sign, over })
            })
            .collect(),
        MoveKind::R1Remove => (0..d.chords.len())
            .filter(|&k| r1_removable(d, k, &ends))
            .map(|k| MoveSite::R1Remove { chord: d.chords[k].label.clone() })
            .collect(),
        MoveKind::R2Insert => {
            let gs = gaps(d);
            let mut out = Vec::new();
            for (i, &first) in gs.iter().enumerate() {
                for &second in &gs[i..] {
                    for sign in [1, -1] {
                        for over in [End::A, End::B] {
                            for antiparallel in [false, true] {
                                out.push(MoveSite::R2Insert { first, second, sign, over, antiparallel });
                            }
                        }
                    }
                }
            }
            out
        }
        MoveKind::R2Remove => {
            let mut out = Vec::new();
            for x in 0..d.chords.len() {
                for y in x + 1..d.chords.len() {
                    if r2_removable(d, x, y, &ends) {
                        let chords = [d.chords[x].label.clone(), d.chords[y].label.clone()];
                        out.push(MoveSite::R2Remove { chords });
                    }
                }
            }
            out
        }
        MoveKind::R3 => r3_sites(d),
    }
}

fn gap_ok(d: &TangleDiagram, g: Gap) -> bool {
    gaps(d).contains(&g)
}

fn insert_visits(d: &mut TangleDiagram, mut inserts: Vec<(Gap, Vec<Visit>)>) {
    // highest index first so earlier positions stay put
    inserts.sort_by_key(|x| std::cmp::Reverse(x.0));
    for (g, vs) in inserts {
        let visits = &mut d.components[g.component].visits;
        for (k, v) in vs.into_iter().enumerate() {
            visits.insert(g.index + k, v);
        }
    }
}

/// Applies a site produced by [`enumerate_sites`] on the same diagram.
pub fn apply(d: &TangleDiagram, site: &MoveSite) -> Result<TangleDiagram, MoveError> {
    let stale = || MoveError::StaleSite(Box::new(site.clone()));
    let mut out = d.clone();
    match site {
        MoveSite::R1Insert { at, sign, over } => {
            if !gap_ok(d, *at) || sign.abs() != 1 {
                return Err(stale());
            }
            let k = out.chords.len();
            out.chords.push(Chord::classical(d.fresh_label(), *sign, *over));
            insert_visits(&mut out, vec![(*at, vec![Visit { chord: k, end: End::A }, Visit { chord: k, end: End::B }])]);
        }
        MoveSite::R1Remove { chord } => {
            let k = d.chord_index(chord).ok_or_else(stale)?;
            if !r1_removable(d, k, &d.endpoints()) {
                return Err(stale());
            }
            out.remove_chord(k);
        }
        MoveSite::R2Insert { first, second, sign, over, antiparallel } => {
            if !gap_ok(d, *first) || !gap_ok(d, *second) || sign.abs() != 1 {
                return Err(stale());
            }
            let (x, y) = (out.chords.len(), out.chords.len() + 1);
            out.chords.push(Chord::classical(d.fresh_label(), *sign, *over));
            let label_y = out.fresh_label();
            out.chords.push(Chord::classical(label_y, -*sign, *over));
            let va = |k| Visit { chord: k, end: End::A };
            let vb = |k| Visit { chord: k, end: End::B };
            let at_first = vec![va(x), va(y)];
            let at_second = if *antiparallel { vec![vb(y), vb(x)] } else { vec![vb(x), vb(y)] };
            if first == second {
                insert_visits(&mut out, vec![(*first, [at_first, at_second].concat())]);
            } else {
                insert_visits(&mut out, vec![(*first, at_first), (*second, at_second)]);
            }
        }
        MoveSite::R2Remove { chords } => {
            let x = d.chord_index(&chords[0]).ok_or_else(stale)?;
            let y = d.chord_index(&chords[1]).ok_or_else(stale)?;
            if !r2_removable(d, x, y, &d.endpoints()) {
                return Err(stale());
            }
            out.remove_chord(x.max(y));
            out.remove_chord(x.min(y));
        }
        MoveSite::R3 { pieces, chords } => {
            let in_range = pieces.iter().all(|p| {
                d.components.get(p.component).is_some_and(|c| p.first < c.visits.len())
                    && next_pos(d, p.component, p.first) == Some(p.second)
            });
            if !in_range || !r3_matches(d, pieces) {
                return Err(stale());
            }
            let found = triangle_chords(d, pieces).ok_or_else(stale)?;
            let mut labels: Vec<&str> = found.iter().map(|&k| d.chords[k].label.as_str()).collect();
            let mut want: Vec<&str> = chords.iter().map(String::as_str).collect();
            labels.sort_unstable();
            want.sort_unstable();
            if labels != want {
                return Err(stale());
            }
            for p in pieces {
                out.components[p.component].visits.swap(p.first, p.second);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    pub steps: usize,
    /// Inserts are not offered once they would exceed this many chords.
    pub chord_cap: usize,
}

impl WalkConfig {
    pub fn new(steps: usize) -> Self {
        Self { steps, chord_cap: DEFAULT_CHORD_CAP }
    }
}

#[derive(Debug, Clone)]
pub struct Walk {
    /// Starts with the input diagram; one more entry per applied move.
    pub diagrams: Vec<TangleDiagram>,
    pub moves: Vec<MoveSite>,
}

fn sample_site(d: &TangleDiagram, cfg: &WalkConfig, rng: &mut ChaCha8Rng) -> Option<MoveSite> {
    let n = d.chords.len();
    let gs = gaps(d);
    let r1 = enumerate_sites(d, MoveKind::R1Remove);
    let r2 = enumerate_sites(d, MoveKind::R2Remove);
    let r3 = enumerate_sites(d, MoveKind::R3);
    let mut menu: Vec<(MoveKind, u32)> = Vec::new();
    if !gs.is_empty() && n < cfg.chord_cap {
        menu.push((MoveKind::R1Insert, 1));
    }
    if !gs.is_empty() && n + 2 <= cfg.chord_cap {
        menu.push((MoveKind::R2Insert, 3));
    }
    if !r1.is_empty() {
        menu.push((MoveKind::R1Remove, 2));
    }
    if !r2.is_empty() {
        menu.push((MoveKind::R2Remove, 2));
    }
    if !r3.is_empty() {
        menu.push((MoveKind::R3, 4));
    }
    let (kind, _) = *menu.choose_weighted(rng, |m| m.1).ok()?;
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let over = if rng.gen_bool(0.5) { End::A } else { End::B };
    Some(match kind {
        MoveKind::R1Insert => MoveSite::R1Insert { at: *gs.choose(rng)?, sign, over },
        MoveKind::R2Insert => {
            let mut first = *gs.choose(rng)?;
            let mut second = *gs.choose(rng)?;
            if second < first {
                std::mem::swap(&mut first, &mut second);
            }
            MoveSite::R2Insert { first, second, sign, over, antiparallel: rng.gen_bool(0.5) }
        }
        MoveKind::R1Remove => r1.choose(rng)?.clone(),
        MoveKind::R2Remove => r2.choose(rng)?.clone(),
        MoveKind::R3 => r3.choose(rng)?.clone(),
    })
}

/// Seeded random walk through equivalent diagrams. Stops early if no move applies.
pub fn random_walk_with(d: &TangleDiagram, cfg: &WalkConfig, seed: u64) -> Walk {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut walk = Walk { diagrams: vec![d.clone()], moves: Vec::new() };
    for _ in 0..cfg.steps {
        let cur = walk.diagrams.last().unwrap();
        let Some(site) = sample_site(cur, cfg, &mut rng) else { break };
        let next = apply(cur, &site).expect("sampled site applies");
        walk.diagrams.push(next);
        walk.moves.push(site);
    }
    walk
}

/// `steps + 1` diagrams (fewer only if the diagram admits no move), with the
/// default chord cap.
pub fn random_walk(d: &TangleDiagram, steps: usize, seed: u64) -> Vec<TangleDiagram> {
    random_walk_with(d, &WalkConfig::new(steps), seed).diagrams
}
