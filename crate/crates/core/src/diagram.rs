//! Gauss-diagram model of virtual tangles.
//!
//! A diagram is a list of components (closed circles or long strands with
//! boundary endpoints) and a list of chords, one per classical or singular
//! crossing. Virtual crossings carry no data and are not stored. Each
//! component records the order in which it passes through chord endpoints.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Top,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::In => Direction::Out,
            Direction::Out => Direction::In,
        }
    }
}

/// A distinguished point on the top or bottom edge of the tangle box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryPoint {
    pub side: Side,
    /// 1-based position along the side.
    pub index: usize,
    pub direction: Direction,
}

impl BoundaryPoint {
    pub fn new(side: Side, index: usize, direction: Direction) -> Self {
        Self { side, index, direction }
    }

    pub fn top(index: usize, direction: Direction) -> Self {
        Self::new(Side::Top, index, direction)
    }

    pub fn bottom(index: usize, direction: Direction) -> Self {
        Self::new(Side::Bottom, index, direction)
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Top => 'T',
            Side::Bottom => 'B',
        };
        let d = match self.direction {
            Direction::In => "in",
            Direction::Out => "out",
        };
        write!(f, "{s}{}:{d}", self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    Closed,
    Long { start: BoundaryPoint, end: BoundaryPoint },
}

/// Which of a chord's two endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    A,
    B,
}

impl End {
    pub fn other(self) -> Self {
        match self {
            End::A => End::B,
            End::B => End::A,
        }
    }
}

/// One passage of a component through a chord endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Visit {
    /// Index into [`TangleDiagram::chords`].
    pub chord: usize,
    pub end: End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
    pub visits: Vec<Visit>,
}

impl Component {
    pub fn closed(name: impl Into<String>, visits: Vec<Visit>) -> Self {
        Self { name: name.into(), kind: ComponentKind::Closed, visits }
    }

    pub fn long(
        name: impl Into<String>,
        start: BoundaryPoint,
        end: BoundaryPoint,
        visits: Vec<Visit>,
    ) -> Self {
        Self { name: name.into(), kind: ComponentKind::Long { start, end }, visits }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind, ComponentKind::Closed)
    }

    /// Whether visit positions `p` and `q` are neighbours along the strand.
    /// Closed components wrap around.
    pub fn adjacent(&self, p: usize, q: usize) -> bool {
        let k = self.visits.len();
        if p == q || p >= k || q >= k {
            return false;
        }
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        hi == lo + 1 || (self.is_closed() && lo == 0 && hi == k - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChordKind {
    Classical { sign: i8, over: End },
    /// A double point. `frame` is the crossing sign obtained by resolving
    /// with end A as the over strand.
    Singular { frame: i8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chord {
    pub label: String,
    pub kind: ChordKind,
}

impl Chord {
    pub fn classical(label: impl Into<String>, sign: i8, over: End) -> Self {
        Self { label: label.into(), kind: ChordKind::Classical { sign, over } }
    }

    pub fn singular(label: impl Into<String>, frame: i8) -> Self {
        Self { label: label.into(), kind: ChordKind::Singular { frame } }
    }

    pub fn sign(&self) -> Option<i8> {
        match self.kind {
            ChordKind::Classical { sign, .. } => Some(sign),
            ChordKind::Singular { .. } => None,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self.kind, ChordKind::Singular { .. })
    }
}

/// Location of a chord endpoint: component index and visit position.
pub type Loc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TangleDiagram {
    /// Number of boundary points on the top edge.
    pub top: usize,
    /// Number of boundary points on the bottom edge.
    pub bottom: usize,
    /// Component order is the variable order `t1..tn`.
    pub components: Vec<Component>,
    pub chords: Vec<Chord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("duplicate chord label {0}")]
    DuplicateLabel(String),
    #[error("duplicate component name {0}")]
    DuplicateComponent(String),
    #[error("component {component} visits unknown chord index {chord}")]
    UnknownChord { component: String, chord: usize },
    #[error("dangling chord {0}")]
    DanglingChord(String),
    #[error("chord {0} endpoint visited more than once")]
    RepeatedEndpoint(String),
    #[error("chord {label} has invalid sign {sign}")]
    BadSign { label: String, sign: i8 },
    #[error("component {0} must start at an in point and end at an out point")]
    LongDirection(String),
    #[error("component {component} uses boundary point {point} out of range")]
    BoundaryOutOfRange { component: String, point: String },
    #[error("boundary point {0} used more than once")]
    BoundaryReused(String),
    #[error("boundary point {0} is not used by any component")]
    BoundaryUnused(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("unknown chord {0}")]
    UnknownChord(String),
}

impl TangleDiagram {
    pub fn new(top: usize, bottom: usize) -> Self {
        Self { top, bottom, ..Default::default() }
    }

    pub fn ncomponents(&self) -> usize {
        self.components.len()
    }

    pub fn has_singular(&self) -> bool {
        self.chords.iter().any(Chord::is_singular)
    }

    pub fn chord_index(&self, label: &str) -> Option<usize> {
        self.chords.iter().position(|c| c.label == label)
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    /// Endpoint locations `[end A, end B]` of every chord. Assumes a valid
    /// diagram; missing endpoints are reported as `None`.
    pub fn endpoint_table(&self) -> Vec<[Option<Loc>; 2]> {
        let mut table = vec![[None, None]; self.chords.len()];
        for (ci, comp) in self.components.iter().enumerate() {
            for (p, v) in comp.visits.iter().enumerate() {
                if let Some(slot) = table.get_mut(v.chord) {
                    slot[v.end as usize] = Some((ci, p));
                }
            }
        }
        table
    }

    /// Endpoint locations of a valid diagram.
    pub fn endpoints(&self) -> Vec<[Loc; 2]> {
        self.endpoint_table()
            .into_iter()
            .map(|[a, b]| [a.expect("valid diagram"), b.expect("valid diagram")])
            .collect()
    }

    /// Returns every violated invariant; an empty list means the diagram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        let mut labels = BTreeSet::new();
        for c in &self.chords {
            if !labels.insert(c.label.as_str()) {
                out.push(Violation::DuplicateLabel(c.label.clone()));
            }
            let s = match c.kind {
                ChordKind::Classical { sign, .. } => sign,
                ChordKind::Singular { frame } => frame,
            };
            if s != 1 && s != -1 {
                out.push(Violation::BadSign { label: c.label.clone(), sign: s });
            }
        }

        let mut names = BTreeSet::new();
        let mut seen = vec![[0usize; 2]; self.chords.len()];
        for comp in &self.components {
            if !names.insert(comp.name.as_str()) {
                out.push(Violation::DuplicateComponent(comp.name.clone()));
            }
            for v in &comp.visits {
                match seen.get_mut(v.chord) {
                    Some(s) => s[v.end as usize] += 1,
                    None => out.push(Violation::UnknownChord {
                        component: comp.name.clone(),
                        chord: v.chord,
                    }),
                }
            }
        }
        for (c, s) in self.chords.iter().zip(&seen) {
            if s.iter().any(|&k| k > 1) {
                out.push(Violation::RepeatedEndpoint(c.label.clone()));
            }
            if s.contains(&0) {
                out.push(Violation::DanglingChord(c.label.clone()));
            }
        }

        let mut used: HashMap<(Side, usize), usize> = HashMap::new();
        for comp in &self.components {
            let ComponentKind::Long { start, end } = comp.kind else { continue };
            if start.direction != Direction::In || end.direction != Direction::Out {
                out.push(Violation::LongDirection(comp.name.clone()));
            }
            for p in [start, end] {
                let limit = match p.side {
                    Side::Top => self.top,
                    Side::Bottom => self.bottom,
                };
                if p.index == 0 || p.index > limit {
                    out.push(Violation::BoundaryOutOfRange {
                        component: comp.name.clone(),
                        point: p.to_string(),
                    });
                } else {
                    *used.entry((p.side, p.index)).or_default() += 1;
                }
            }
        }
        let sides = [(Side::Top, self.top, 'T'), (Side::Bottom, self.bottom, 'B')];
        for (side, count, ch) in sides {
            for i in 1..=count {
                match used.get(&(side, i)).copied().unwrap_or(0) {
                    0 => out.push(Violation::BoundaryUnused(format!("{ch}{i}"))),
                    1 => {}
                    _ => out.push(Violation::BoundaryReused(format!("{ch}{i}"))),
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Reverses the orientation of one component. A long component also
    /// swaps its endpoints and their directions. Crossings shared with
    /// other components change sign; self-crossings keep theirs.
    pub fn reverse_component(&self, name: &str) -> Result<Self, DiagramError> {
        let ci = self
            .component_index(name)
            .ok_or_else(|| DiagramError::UnknownComponent(name.to_string()))?;
        let mut d = self.clone();
        for (chord, [a, b]) in d.chords.iter_mut().zip(self.endpoints()) {
            if (a.0 == ci) != (b.0 == ci) {
                chord.kind = match chord.kind {
                    ChordKind::Classical { sign, over } => ChordKind::Classical { sign: -sign, over },
                    ChordKind::Singular { frame } => ChordKind::Singular { frame: -frame },
                };
            }
        }
        let comp = &mut d.components[ci];
        comp.visits.reverse();
        if let ComponentKind::Long { start, end } = comp.kind {
            comp.kind = ComponentKind::Long {
                start: BoundaryPoint { direction: end.direction.flip(), ..end },
                end: BoundaryPoint { direction: start.direction.flip(), ..start },
            };
        }
        Ok(d)
    }

    /// Smallest positive integer label not already in use.
    pub fn fresh_label(&self) -> String {
        let used: BTreeSet<&str> = self.chords.iter().map(|c| c.label.as_str()).collect();
        (1..)
            .map(|k: usize| k.to_string())
            .find(|s| !used.contains(s.as_str()))
            .unwrap()
    }

    /// Removes a chord and both of its visits, renumbering chord indices.
    pub fn remove_chord(&mut self, chord: usize) {
        self.chords.remove(chord);
        for comp in &mut self.components {
            comp.visits.retain(|v| v.chord != chord);
            for v in &mut comp.visits {
                if v.chord > chord {
                    v.chord -= 1;
                }
            }
        }
    }

    /// Total number of visits across components.
    pub fn visit_count(&self) -> usize {
        self.components.iter().map(|c| c.visits.len()).sum()
    }
}

// Identity of a visit that survives swapping a chord's end labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum VisitKey {
    Classical { label: String, over: bool, sign: i8 },
    Singular { label: String, frame: i8 },
}

fn visit_key(d: &TangleDiagram, v: &Visit) -> VisitKey {
    let c = &d.chords[v.chord];
    match c.kind {
        ChordKind::Classical { sign, over } => {
            VisitKey::Classical { label: c.label.clone(), over: over == v.end, sign }
        }
        ChordKind::Singular { frame } => {
            let frame = if v.end == End::A { frame } else { -frame };
            VisitKey::Singular { label: c.label.clone(), frame }
        }
    }
}

/// Equality up to rotating the visit list of each closed component.
/// Labels, names and component order must agree.
pub fn equal_diagrams(d1: &TangleDiagram, d2: &TangleDiagram) -> bool {
    if d1.top != d2.top
        || d1.bottom != d2.bottom
        || d1.components.len() != d2.components.len()
        || d1.chords.len() != d2.chords.len()
    {
        return false;
    }
    let labels1: BTreeMap<&str, bool> =
        d1.chords.iter().map(|c| (c.label.as_str(), c.is_singular())).collect();
    let labels2: BTreeMap<&str, bool> =
        d2.chords.iter().map(|c| (c.label.as_str(), c.is_singular())).collect();
    if labels1 != labels2 {
        return false;
    }
    d1.components.iter().zip(&d2.components).all(|(c1, c2)| {
        if c1.name != c2.name || c1.kind != c2.kind || c1.visits.len() != c2.visits.len() {
            return false;
        }
        let k1: Vec<VisitKey> = c1.visits.iter().map(|v| visit_key(d1, v)).collect();
        let k2: Vec<VisitKey> = c2.visits.iter().map(|v| visit_key(d2, v)).collect();
        if c1.is_closed() {
            k1.is_empty() || (0..k1.len()).any(|r| rotated_eq(&k1, &k2, r))
        } else {
            k1 == k2
        }
    })
}

fn rotated_eq<T: PartialEq>(a: &[T], b: &[T], r: usize) -> bool {
    let n = a.len();
    (0..n).all(|i| a[(i + r) % n] == b[i])
}
