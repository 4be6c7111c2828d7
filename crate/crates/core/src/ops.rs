//! Tangle algebra: stacking, closure and linking-number generators.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{
    BoundaryPoint, Chord, Component, ComponentKind, Direction, End, Side, TangleDiagram, Visit,
};
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpsError {
    #[error("cannot stack: upper tangle has {bottom} bottom points, lower has {top} top points")]
    CountMismatch { bottom: usize, top: usize },
    #[error("orientation clash at glued point {0}")]
    DirectionClash(usize),
    #[error("not a string link")]
    NotStringLink,
    #[error("linking counts must be non-negative, got ({0}, {1})")]
    Negative(i64, i64),
}

/// Which input a component of a glued diagram came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Upper(usize),
    Lower(usize),
}

/// Variable identifications `t_i = u_j` made by gluing, 0-based.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueResult {
    pub diagram: TangleDiagram,
    pub relations: RelationSet,
    /// For each result component, the input components joined into it in
    /// traversal order.
    pub component_map: Vec<Vec<Source>>,
    upper_ncomp: usize,
    lower_ncomp: usize,
}

impl GlueResult {
    /// Result-component index of every input component.
    pub fn target_of(&self, s: Source) -> usize {
        self.component_map.iter().position(|m| m.contains(&s)).expect("input component is mapped")
    }

    /// Rewrites a polynomial in the upper tangle's variables into the
    /// variables of the glued diagram.
    pub fn lift_upper(&self, p: &LaurentPoly) -> LaurentPoly {
        let map: Vec<usize> = (0..self.upper_ncomp).map(|i| self.target_of(Source::Upper(i))).collect();
        p.rename_vars(&map, self.diagram.ncomponents())
    }

    pub fn lift_lower(&self, p: &LaurentPoly) -> LaurentPoly {
        let map: Vec<usize> = (0..self.lower_ncomp).map(|i| self.target_of(Source::Lower(i))).collect();
        p.rename_vars(&map, self.diagram.ncomponents())
    }
}

fn endpoint_at(d: &TangleDiagram, side: Side, index: usize) -> Option<(usize, bool)> {
    d.components.iter().enumerate().find_map(|(ci, c)| match c.kind {
        ComponentKind::Long { start, end } => {
            if start.side == side && start.index == index {
                Some((ci, true))
            } else if end.side == side && end.index == index {
                Some((ci, false))
            } else {
                None
            }
        }
        ComponentKind::Closed => None,
    })
}

/// Stacks `upper` on top of `lower`, gluing bottom point `i` of `upper` to
/// top point `i` of `lower`. Strands are followed across the seam, so a
/// chain can pick up several input components and may close up.
pub fn connect(upper: &TangleDiagram, lower: &TangleDiagram) -> Result<GlueResult, OpsError> {
    if upper.bottom != lower.top {
        return Err(OpsError::CountMismatch { bottom: upper.bottom, top: lower.top });
    }
    let seam = upper.bottom;
    for i in 1..=seam {
        let (_, u_start) = endpoint_at(upper, Side::Bottom, i).expect("valid upper tangle");
        let (_, l_start) = endpoint_at(lower, Side::Top, i).expect("valid lower tangle");
        // one side must leave the seam point where the other one enters it
        if u_start == l_start {
            return Err(OpsError::DirectionClash(i));
        }
    }

    let sources: Vec<(Source, &Component)> = upper
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| (Source::Upper(i), c))
        .chain(lower.components.iter().enumerate().map(|(i, c)| (Source::Lower(i), c)))
        .collect();
    let index_of: HashMap<Source, usize> = sources.iter().enumerate().map(|(k, (s, _))| (*s, k)).collect();

    // successor of a long input component across the seam
    let successor = |s: Source| -> Option<Source> {
        let (_, c) = sources[index_of[&s]];
        let ComponentKind::Long { end, .. } = c.kind else { return None };
        match (s, end.side) {
            (Source::Upper(_), Side::Bottom) => {
                endpoint_at(lower, Side::Top, end.index).map(|(ci, _)| Source::Lower(ci))
            }
            (Source::Lower(_), Side::Top) => {
                endpoint_at(upper, Side::Bottom, end.index).map(|(ci, _)| Source::Upper(ci))
            }
            _ => None,
        }
    };
    let mut predecessor: HashMap<Source, Source> = HashMap::new();
    for (s, _) in &sources {
        if let Some(t) = successor(*s) {
            predecessor.insert(t, *s);
        }
    }

    let mut used = vec![false; sources.len()];
    let mut chains: Vec<(Vec<Source>, bool)> = Vec::new();
    for (k, (s, c)) in sources.iter().enumerate() {
        if used[k] {
            continue;
        }
        if c.is_closed() {
            used[k] = true;
            chains.push((vec![*s], true));
            continue;
        }
        // walk back to the chain start, detecting loops
        let mut head = *s;
        let mut closed = false;
        while let Some(&p) = predecessor.get(&head) {
            head = p;
            if head == *s {
                closed = true;
                break;
            }
        }
        let mut chain = vec![head];
        used[index_of[&head]] = true;
        let mut cur = head;
        while let Some(nx) = successor(cur) {
            if nx == head {
                break;
            }
            chain.push(nx);
            used[index_of[&nx]] = true;
            cur = nx;
        }
        chains.push((chain, closed));
    }
    // order result components by their first input component
    chains.sort_by_key(|(ch, _)| ch.iter().map(|s| index_of[s]).min().unwrap());

    let mut d = TangleDiagram::new(upper.top, lower.bottom);
    let mut chord_offset = HashMap::new();
    for (tag, src, s) in [("t", upper, 0usize), ("u", lower, 1usize)] {
        chord_offset.insert(s, d.chords.len());
        for c in &src.chords {
            d.chords.push(Chord { label: format!("{tag}.{}", c.label), kind: c.kind });
        }
    }
    let mut relations = RelationSet::default();
    let mut component_map = Vec::new();
    for (chain, closed) in &chains {
        let mut visits = Vec::new();
        let mut names = Vec::new();
        for s in chain {
            let (_, c) = sources[index_of[s]];
            let (tag, off) = match s {
                Source::Upper(_) => ("t", chord_offset[&0]),
                Source::Lower(_) => ("u", chord_offset[&1]),
            };
            names.push(format!("{tag}.{}", c.name));
            visits.extend(c.visits.iter().map(|v| Visit { chord: v.chord + off, end: v.end }));
        }
        for w in chain.windows(2) {
            let pair = match (w[0], w[1]) {
                (Source::Upper(i), Source::Lower(j)) | (Source::Lower(j), Source::Upper(i)) => (i, j),
                _ => unreachable!("seam alternates between tangles"),
            };
            relations.pairs.push(pair);
        }
        if *closed && chain.len() > 1 {
            let pair = match (chain[chain.len() - 1], chain[0]) {
                (Source::Upper(i), Source::Lower(j)) | (Source::Lower(j), Source::Upper(i)) => (i, j),
                _ => unreachable!("seam alternates between tangles"),
            };
            relations.pairs.push(pair);
        }
        let name = names.join("+");
        let kind = if *closed {
            ComponentKind::Closed
        } else {
            let start_of = |s: &Source| match sources[index_of[s]].1.kind {
                ComponentKind::Long { start, end } => (start, end),
                ComponentKind::Closed => unreachable!(),
            };
            let (start, _) = start_of(&chain[0]);
            let (_, end) = start_of(chain.last().unwrap());
            ComponentKind::Long { start, end }
        };
        d.components.push(Component { name, kind, visits });
        component_map.push(chain.clone());
    }
    relations.pairs.sort_unstable();
    relations.pairs.dedup();
    Ok(GlueResult {
        diagram: d,
        relations,
        component_map,
        upper_ncomp: upper.ncomponents(),
        lower_ncomp: lower.ncomponents(),
    })
}

/// An `(n,n)` tangle without closed components whose `i`-th component runs
/// from top point `i` down to bottom point `i`.
pub fn is_string_link(d: &TangleDiagram) -> bool {
    d.top == d.bottom
        && d.components.len() == d.top
        && d.components.iter().enumerate().all(|(i, c)| {
            matches!(c.kind, ComponentKind::Long { start, end }
                if start == BoundaryPoint::top(i + 1, Direction::In)
                    && end == BoundaryPoint::bottom(i + 1, Direction::Out))
        })
}

/// Joins top point `i` to bottom point `i` outside the box.
pub fn closure(d: &TangleDiagram) -> Result<TangleDiagram, OpsError> {
    if !is_string_link(d) {
        return Err(OpsError::NotStringLink);
    }
    let mut out = d.clone();
    out.top = 0;
    out.bottom = 0;
    for c in &mut out.components {
        c.kind = ComponentKind::Closed;
    }
    Ok(out)
}

/// Trivial `n`-strand string link.
pub fn identity_braid(n: usize) -> TangleDiagram {
    let mut d = TangleDiagram::new(n, n);
    for i in 1..=n {
        d.components.push(Component::long(
            format!("S{i}"),
            BoundaryPoint::top(i, Direction::In),
            BoundaryPoint::bottom(i, Direction::Out),
            vec![],
        ));
    }
    d
}

/// Chords plus the visit sequences of the two strands.
type Strands = (Vec<Chord>, Vec<Visit>, Vec<Visit>);

fn vlk_chords(a: i64, b: i64) -> Result<Strands, OpsError> {
    if a < 0 || b < 0 {
        return Err(OpsError::Negative(a, b));
    }
    let (a, b) = (a as usize, b as usize);
    let mut chords = Vec::new();
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for k in 0..a + b {
        // A on the first component; first block has it over, second block under
        let (sign, over) = if k < a { (1, End::A) } else { (-1, End::B) };
        chords.push(Chord::classical((k + 1).to_string(), sign, over));
        first.push(Visit { chord: k, end: End::A });
        second.push(Visit { chord: k, end: End::B });
    }
    Ok((chords, first, second))
}

/// Two-component link with `vlk(L1, L2) = a` and `vlk(L2, L1) = -b`: `a`
/// positive crossings with `L1` over followed by `b` negative crossings
/// with `L2` over.
pub fn gen_vlk_link(a: i64, b: i64) -> Result<TangleDiagram, OpsError> {
    let (chords, first, second) = vlk_chords(a, b)?;
    Ok(TangleDiagram {
        top: 0,
        bottom: 0,
        components: vec![Component::closed("L1", first), Component::closed("L2", second)],
        chords,
    })
}

/// Two-strand string link whose closure is [`gen_vlk_link`].
pub fn gen_vlk_braid(a: i64, b: i64) -> Result<TangleDiagram, OpsError> {
    let (chords, first, second) = vlk_chords(a, b)?;
    let mut d = identity_braid(2);
    d.components[0].name = "L1".into();
    d.components[1].name = "L2".into();
    d.components[0].visits = first;
    d.components[1].visits = second;
    d.chords = chords;
    Ok(d)
}
