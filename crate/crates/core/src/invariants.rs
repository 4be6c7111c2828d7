//! Index polynomials of virtual tangles.
//!
//! Smoothing a self-crossing `c` of component `i` according to orientation
//! splits that component into two pieces. The intersection index `i(c)`
//! counts the chords running between the two pieces with the flat sign
//! rule: a chord contributes its sign when its over endpoint lies on the
//! first piece and minus its sign otherwise. Chords touching other
//! components are ignored.
//!
//! * `p_sc  = Σ_i Σ_{c self-crossing of i} sgn(c) (t_i^{|i(c)|} - 1)`
//! * `p_lk  = p_sc + Σ_{i<j} [a vlk(i,j) + b vlk(j,i)] t_i t_j`
//! * `p_lkL = p_sc + Σ_{i<j} a vlk(i,j) t_i t_j^-1 + b vlk(j,i) t_i^-1 t_j`
//!
//! where `vlk(i,j)` sums the signs of crossings in which `i` passes over `j`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ChordKind, ComponentKind, End, TangleDiagram};
use crate::poly::{int, LaurentPoly, Rational, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("unknown chord {0}")]
    UnknownChord(String),
    #[error("chord {0} is singular")]
    SingularChord(String),
    #[error("chord {0} joins two different components")]
    MixedChord(String),
    #[error("component index {0} out of range")]
    BadComponent(usize),
    #[error("vlk needs two distinct components, got {0} and {0}")]
    SameComponent(usize),
    #[error("diagram has singular chords")]
    HasSingular,
    #[error("expected exactly one {0} component")]
    WrongShape(&'static str),
}

/// The two pieces left after smoothing a self-crossing, as visit
/// positions on its component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothSplit {
    pub chord: String,
    pub component: usize,
    /// For a long component this is the piece carrying both boundary points.
    pub piece1: BTreeSet<usize>,
    /// For a long component this is the new closed piece.
    pub piece2: BTreeSet<usize>,
}

impl SmoothSplit {
    pub fn swapped(&self) -> Self {
        Self { piece1: self.piece2.clone(), piece2: self.piece1.clone(), ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexValue {
    pub signed: i64,
    pub absolute: u64,
}

impl IndexValue {
    fn new(signed: i64) -> Self {
        Self { signed, absolute: signed.unsigned_abs() }
    }
}

fn self_chord(d: &TangleDiagram, label: &str) -> Result<(usize, [usize; 2]), InvariantError> {
    let k = d.chord_index(label).ok_or_else(|| InvariantError::UnknownChord(label.to_string()))?;
    if d.chords[k].is_singular() {
        return Err(InvariantError::SingularChord(label.to_string()));
    }
    let [a, b] = d.endpoints()[k];
    if a.0 != b.0 {
        return Err(InvariantError::MixedChord(label.to_string()));
    }
    Ok((a.0, [a.1, b.1]))
}

/// Oriented smoothing of a classical self-crossing.
pub fn smooth_split(d: &TangleDiagram, label: &str) -> Result<SmoothSplit, InvariantError> {
    let (ci, [pa, pb]) = self_chord(d, label)?;
    let comp = &d.components[ci];
    let k = comp.visits.len();
    let others = (0..k).filter(|&p| p != pa && p != pb);
    let (piece1, piece2) = match comp.kind {
        ComponentKind::Closed => {
            // arc following end A, up to end B
            let dist = |p: usize| (p + k - pa) % k;
            let db = dist(pb);
            others.partition(|&p| dist(p) < db)
        }
        ComponentKind::Long { .. } => {
            let (lo, hi) = (pa.min(pb), pa.max(pb));
            let (inner, outer): (BTreeSet<usize>, BTreeSet<usize>) =
                others.partition(|&p| lo < p && p < hi);
            (outer, inner)
        }
    };
    Ok(SmoothSplit { chord: label.to_string(), component: ci, piece1, piece2 })
}

/// Flat-sign count of chords running between the two pieces of `split`.
pub fn index_of_split(d: &TangleDiagram, split: &SmoothSplit) -> IndexValue {
    let comp = &d.components[split.component];
    let ends = d.endpoints();
    let mut total = 0i64;
    let mut counted = BTreeSet::new();
    for &p in &split.piece1 {
        let v = comp.visits[p];
        let chord = &d.chords[v.chord];
        if chord.label == split.chord || !counted.insert(v.chord) {
            continue;
        }
        let other = ends[v.chord][v.end.other() as usize];
        if other.0 != split.component || !split.piece2.contains(&other.1) {
            continue;
        }
        if let ChordKind::Classical { sign, over } = chord.kind {
            let s = sign as i64;
            total += if over == v.end { s } else { -s };
        }
    }
    IndexValue::new(total)
}

pub fn intersection_index(d: &TangleDiagram, label: &str) -> Result<IndexValue, InvariantError> {
    let split = smooth_split(d, label)?;
    Ok(index_of_split(d, &split))
}

fn ensure_classical(d: &TangleDiagram) -> Result<(), InvariantError> {
    if d.has_singular() {
        Err(InvariantError::HasSingular)
    } else {
        Ok(())
    }
}

// Self-crossings with their component, sign and signed index.
fn self_crossings(d: &TangleDiagram) -> Vec<(usize, i8, i64)> {
    let ends = d.endpoints();
    d.chords
        .iter()
        .enumerate()
        .filter_map(|(k, c)| {
            let ChordKind::Classical { sign, .. } = c.kind else { return None };
            let [a, b] = ends[k];
            if a.0 != b.0 {
                return None;
            }
            let idx = intersection_index(d, &c.label).expect("self-crossing");
            Some((a.0, sign, idx.signed))
        })
        .collect()
}

fn unit(n: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(i, e) in entries {
        v[i] += e;
    }
    v
}

/// Self-crossing polynomial.
pub fn p_sc(d: &TangleDiagram) -> Result<LaurentPoly, InvariantError> {
    ensure_classical(d)?;
    let n = d.ncomponents();
    let mut p = LaurentPoly::zero(n);
    for (ci, sign, idx) in self_crossings(d) {
        let s = int(sign as i64);
        p.add_term(unit(n, &[(ci, idx.abs())]), s.clone());
        p.add_term(vec![0; n], -s);
    }
    Ok(p)
}

fn check_pair(d: &TangleDiagram, i: usize, j: usize) -> Result<(), InvariantError> {
    let n = d.ncomponents();
    for x in [i, j] {
        if x >= n {
            return Err(InvariantError::BadComponent(x));
        }
    }
    if i == j {
        return Err(InvariantError::SameComponent(i));
    }
    Ok(())
}

/// Matrix of `vlk(i, j)`, with zeros on the diagonal. Singular chords are skipped.
pub fn vlk_matrix(d: &TangleDiagram) -> Vec<Vec<i64>> {
    let n = d.ncomponents();
    let mut m = vec![vec![0i64; n]; n];
    for (c, [a, b]) in d.chords.iter().zip(d.endpoints()) {
        let ChordKind::Classical { sign, over } = c.kind else { continue };
        if a.0 == b.0 {
            continue;
        }
        let (o, u) = if over == End::A { (a.0, b.0) } else { (b.0, a.0) };
        m[o][u] += sign as i64;
    }
    m
}

/// Virtual linking number: signs of crossings where component `i` is over `j`
/// (0-based indices).
pub fn vlk(d: &TangleDiagram, i: usize, j: usize) -> Result<i64, InvariantError> {
    check_pair(d, i, j)?;
    Ok(vlk_matrix(d)[i][j])
}

pub fn wriggle(d: &TangleDiagram, i: usize, j: usize) -> Result<i64, InvariantError> {
    check_pair(d, i, j)?;
    let m = vlk_matrix(d);
    Ok(m[i][j] - m[j][i])
}

fn with_cross_terms(
    d: &TangleDiagram,
    a: &Rational,
    b: &Rational,
    exps: impl Fn(usize, usize, usize) -> (Vec<i64>, Vec<i64>),
) -> Result<LaurentPoly, InvariantError> {
    let mut p = p_sc(d)?;
    let n = d.ncomponents();
    let m = vlk_matrix(d);
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate().skip(i + 1) {
            let (ea, eb) = exps(n, i, j);
            p.add_term(ea, a * int(v));
            p.add_term(eb, b * int(m[j][i]));
        }
    }
    Ok(p)
}

pub fn p_lk(d: &TangleDiagram, a: &Rational, b: &Rational) -> Result<LaurentPoly, InvariantError> {
    with_cross_terms(d, a, b, |n, i, j| {
        let e = unit(n, &[(i, 1), (j, 1)]);
        (e.clone(), e)
    })
}

pub fn p_lk_l(d: &TangleDiagram, a: &Rational, b: &Rational) -> Result<LaurentPoly, InvariantError> {
    with_cross_terms(d, a, b, |n, i, j| (unit(n, &[(i, 1), (j, -1)]), unit(n, &[(i, -1), (j, 1)])))
}

/// Index polynomial of a virtual knot (one closed component).
pub fn henrich_pt(d: &TangleDiagram) -> Result<LaurentPoly, InvariantError> {
    if d.ncomponents() != 1 || !d.components[0].is_closed() {
        return Err(InvariantError::WrongShape("closed"));
    }
    ensure_classical(d)?;
    let mut p = LaurentPoly::zero(1);
    for (_, sign, idx) in self_crossings(d) {
        p.add_term(vec![idx.abs()], int(sign as i64));
        p.add_term(vec![0], int(-(sign as i64)));
    }
    Ok(p)
}

/// Ordered index polynomial of a long virtual knot: the signed index is
/// taken with the long piece first, so exponents may be negative.
pub fn ordered_pt_long(d: &TangleDiagram) -> Result<LaurentPoly, InvariantError> {
    if d.ncomponents() != 1 || d.components[0].is_closed() {
        return Err(InvariantError::WrongShape("long"));
    }
    ensure_classical(d)?;
    let mut p = LaurentPoly::zero(1);
    for (_, sign, idx) in self_crossings(d) {
        p.add_term(vec![idx], int(sign as i64));
        p.add_term(vec![0], int(-(sign as i64)));
    }
    Ok(p)
}

/// The value `(a, b)` pair and every invariant of a classical diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub components: Vec<String>,
    pub a: Rational,
    pub b: Rational,
    pub p_sc: LaurentPoly,
    pub p_lk: LaurentPoly,
    pub p_lk_l: LaurentPoly,
    pub vlk: Vec<Vec<i64>>,
    pub wriggle: Vec<Vec<i64>>,
}

impl InvariantReport {
    pub fn compute(d: &TangleDiagram, a: &Rational, b: &Rational) -> Result<Self, InvariantError> {
        let vlk = vlk_matrix(d);
        let n = vlk.len();
        let wriggle = (0..n).map(|i| (0..n).map(|j| vlk[i][j] - vlk[j][i]).collect()).collect();
        Ok(Self {
            components: d.components.iter().map(|c| c.name.clone()).collect(),
            a: a.clone(),
            b: b.clone(),
            p_sc: p_sc(d)?,
            p_lk: p_lk(d, a, b)?,
            p_lk_l: p_lk_l(d, a, b)?,
            vlk,
            wriggle,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s += &format!("components: {}\n", self.components.join(" "));
        s += &format!("a: {}\nb: {}\n", self.a, self.b);
        s += &format!("psc: {}\n", self.p_sc);
        s += &format!("plk: {}\n", self.p_lk);
        s += &format!("plkL: {}\n", self.p_lk_l);
        s += &matrix_text("vlk", &self.vlk);
        s += &matrix_text("wriggle", &self.wriggle);
        s
    }

    pub fn to_json(&self) -> ReportJson {
        let n = self.components.len();
        let off_diag = |m: &Vec<Vec<i64>>| {
            (0..n).map(|i| (0..n).map(|j| (i != j).then_some(m[i][j])).collect()).collect()
        };
        ReportJson {
            components: self.components.clone(),
            a: self.a.to_string(),
            b: self.b.to_string(),
            psc: PolyJson::from(&self.p_sc),
            plk: PolyJson::from(&self.p_lk),
            plk_l: PolyJson::from(&self.p_lk_l),
            vlk: off_diag(&self.vlk),
            wriggle: off_diag(&self.wriggle),
        }
    }
}

pub(crate) fn matrix_text(title: &str, m: &[Vec<i64>]) -> String {
    let mut s = format!("{title}:\n");
    for (i, row) in m.iter().enumerate() {
        let cells: Vec<String> =
            row.iter().enumerate().map(|(j, v)| if i == j { ".".into() } else { v.to_string() }).collect();
        s += &format!("  {}\n", cells.join(" "));
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyJson {
    pub text: String,
    pub terms: Vec<Term>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        Self { text: p.render_canonical(), terms: p.to_terms() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub components: Vec<String>,
    pub a: String,
    pub b: String,
    pub psc: PolyJson,
    pub plk: PolyJson,
    #[serde(rename = "plkL")]
    pub plk_l: PolyJson,
    pub vlk: Vec<Vec<Option<i64>>>,
    pub wriggle: Vec<Vec<Option<i64>>>,
}

/// Selects one of the three tangle invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariant {
    Psc,
    Plk(Rational, Rational),
    PlkL(Rational, Rational),
}

impl Invariant {
    pub fn eval(&self, d: &TangleDiagram) -> Result<LaurentPoly, InvariantError> {
        match self {
            Invariant::Psc => p_sc(d),
            Invariant::Plk(a, b) => p_lk(d, a, b),
            Invariant::PlkL(a, b) => p_lk_l(d, a, b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Invariant::Psc => "psc",
            Invariant::Plk(..) => "plk",
            Invariant::PlkL(..) => "plkL",
        }
    }

    pub fn all(a: &Rational, b: &Rational) -> [Invariant; 3] {
        [Invariant::Psc, Invariant::Plk(a.clone(), b.clone()), Invariant::PlkL(a.clone(), b.clone())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse;
    use crate::poly::rat;

    const VT: &str = "tangle 0 0\ncomponent K closed\nO1+ O2+ U1+ U2+";
    const LONG_VT: &str = "tangle 1 1\ncomponent K long T1:in B1:out\nO1+ O2+ U1+ U2+";
    const CLASP: &str = "tangle 2 2\ncomponent A long T1:in B1:out\nO1+ U2+\n\
                         component B long T2:in B2:out\nU1+ O2+";

    fn poly(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn split_of_isolated_chord() {
        let d = parse("tangle 0 0\ncomponent K closed\nO1+ U1+").unwrap();
        let s = smooth_split(&d, "1").unwrap();
        assert!(s.piece1.is_empty() && s.piece2.is_empty());
        assert_eq!(intersection_index(&d, "1").unwrap(), IndexValue { signed: 0, absolute: 0 });
    }

    #[test]
    fn split_virtual_trefoil() {
        let d = parse(VT).unwrap();
        let s = smooth_split(&d, "1").unwrap();
        assert_eq!(s.piece1, BTreeSet::from([1]));
        assert_eq!(s.piece2, BTreeSet::from([3]));
        assert_eq!(intersection_index(&d, "1").unwrap().absolute, 1);
        assert_eq!(intersection_index(&d, "2").unwrap().absolute, 1);
    }

    #[test]
    fn split_long_single_chord() {
        let d = parse("tangle 1 1\ncomponent K long T1:in B1:out\nO1+ U1+").unwrap();
        let s = smooth_split(&d, "1").unwrap();
        assert!(s.piece1.is_empty() && s.piece2.is_empty());
        let d = parse(LONG_VT).unwrap();
        let s = smooth_split(&d, "1").unwrap();
        assert_eq!(s.piece1, BTreeSet::from([3]));
        assert_eq!(s.piece2, BTreeSet::from([1]));
    }

    #[test]
    fn split_errors() {
        let d = parse(CLASP).unwrap();
        assert_eq!(smooth_split(&d, "1"), Err(InvariantError::MixedChord("1".into())));
        assert_eq!(smooth_split(&d, "9"), Err(InvariantError::UnknownChord("9".into())));
        let s = parse("tangle 0 0\ncomponent K closed\nS1+ S1+").unwrap();
        assert_eq!(smooth_split(&s, "1"), Err(InvariantError::SingularChord("1".into())));
    }

    #[test]
    fn swapped_pieces_negate() {
        let d = parse("tangle 0 0\ncomponent K closed\nO1+ U2+ O3+ U1+ O2+ U3+ O4- U5- O5- U4-").unwrap();
        for c in &d.chords {
            let s = smooth_split(&d, &c.label).unwrap();
            let x = index_of_split(&d, &s);
            let y = index_of_split(&d, &s.swapped());
            assert_eq!(x.signed, -y.signed);
            assert_eq!(x.absolute, y.absolute);
        }
    }

    #[test]
    fn psc_values() {
        assert_eq!(p_sc(&parse(VT).unwrap()).unwrap(), poly("-2 + 2 t1", 1));
        let kink = parse("tangle 0 0\ncomponent K closed\nO1- U1-").unwrap();
        assert!(p_sc(&kink).unwrap().is_zero());
        assert!(p_sc(&parse(CLASP).unwrap()).unwrap().is_zero());
        let sing = parse("tangle 0 0\ncomponent K closed\nS1+ S1+").unwrap();
        assert_eq!(p_sc(&sing), Err(InvariantError::HasSingular));
    }

    #[test]
    fn clasp_values() {
        let d = parse(CLASP).unwrap();
        assert_eq!(vlk(&d, 0, 1).unwrap(), 1);
        assert_eq!(vlk(&d, 1, 0).unwrap(), 1);
        assert_eq!(wriggle(&d, 0, 1).unwrap(), 0);
        let (a, b) = (rat(1, 1), rat(2, 1));
        assert_eq!(p_lk(&d, &a, &b).unwrap().to_string(), "3 t1 t2");
        assert_eq!(p_lk_l(&d, &a, &b).unwrap().to_string(), "1 t1 t2^-1 + 2 t1^-1 t2");
    }

    #[test]
    fn virtualized_clasp() {
        let top = parse("tangle 2 2\ncomponent A long T1:in B1:out\nO1+\ncomponent B long T2:in B2:out\nU1+").unwrap();
        let bot = parse("tangle 2 2\ncomponent A long T1:in B1:out\nU2+\ncomponent B long T2:in B2:out\nO2+").unwrap();
        let (a, b) = (rat(3, 1), rat(-3, 1));
        assert_eq!(p_lk(&top, &a, &b).unwrap(), poly("3 t1 t2", 2));
        assert_eq!(p_lk(&bot, &a, &b).unwrap(), poly("-3 t1 t2", 2));
    }

    #[test]
    fn vlk_errors() {
        let d = parse(CLASP).unwrap();
        assert_eq!(vlk(&d, 0, 0), Err(InvariantError::SameComponent(0)));
        assert_eq!(vlk(&d, 0, 2), Err(InvariantError::BadComponent(2)));
        let e = parse("tangle 2 2\ncomponent A long T1:in B1:out\ncomponent B long T2:in B2:out").unwrap();
        assert_eq!(vlk(&e, 0, 1).unwrap(), 0);
        assert!(p_lk(&e, &rat(1, 1), &rat(1, 1)).unwrap().is_zero());
        assert!(p_lk_l(&e, &rat(1, 1), &rat(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn separation_witness() {
        let d = parse(
            "tangle 2 2\ncomponent A long T1:in B1:out\nO1+ O2+ U3-\ncomponent B long T2:in B2:out\nU1+ U2+ O3-",
        )
        .unwrap();
        assert_eq!((vlk(&d, 0, 1).unwrap(), vlk(&d, 1, 0).unwrap()), (2, -1));
        let (a, b) = (rat(1, 1), rat(2, 1));
        assert!(p_lk(&d, &a, &b).unwrap().is_zero());
        assert_eq!(p_lk_l(&d, &a, &b).unwrap(), poly("2 t1 t2^-1 - 2 t1^-1 t2", 2));
    }

    #[test]
    fn henrich_values() {
        assert_eq!(henrich_pt(&parse(VT).unwrap()).unwrap(), poly("-2 + 2 t1", 1));
        let trefoil = parse("tangle 0 0\ncomponent K closed\nO1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert!(henrich_pt(&trefoil).unwrap().is_zero());
        assert!(henrich_pt(&parse("tangle 0 0\ncomponent K closed").unwrap()).unwrap().is_zero());
        assert_eq!(henrich_pt(&parse(CLASP).unwrap()), Err(InvariantError::WrongShape("closed")));
    }

    #[test]
    fn ordered_long_values() {
        let d = parse(LONG_VT).unwrap();
        assert_eq!(ordered_pt_long(&d).unwrap(), poly("-2 + 1 t1 + 1 t1^-1", 1));
        let kink = parse("tangle 1 1\ncomponent K long T1:in B1:out\nU1+ O1+").unwrap();
        assert!(ordered_pt_long(&kink).unwrap().is_zero());
        let mirror = parse("tangle 1 1\ncomponent K long T1:in B1:out\nO1- O2- U1- U2-").unwrap();
        assert_eq!(ordered_pt_long(&mirror).unwrap(), poly("2 - 1 t1 - 1 t1^-1", 1));
        assert_eq!(ordered_pt_long(&parse(VT).unwrap()), Err(InvariantError::WrongShape("long")));
    }

    #[test]
    fn report_text() {
        let d = parse(CLASP).unwrap();
        let r = InvariantReport::compute(&d, &rat(1, 1), &rat(2, 1)).unwrap();
        let t = r.to_text();
        assert!(t.contains("plk: 3 t1 t2\n"));
        assert!(t.contains("vlk:\n  . 1\n  1 .\n"));
        let j = serde_json::to_value(r.to_json()).unwrap();
        assert_eq!(j["plkL"]["text"], "1 t1 t2^-1 + 2 t1^-1 t2");
        assert_eq!(j["vlk"][0][1], 1);
        assert!(j["vlk"][0][0].is_null());
    }
}
