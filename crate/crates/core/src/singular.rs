//! Double points and the Vassiliev derivative.
//!
//! A singular chord with frame `f` resolves two ways: `+` gives a positive
//! crossing with end A over when `f = +1` (end B over when `f = -1`), and
//! `-` gives a negative crossing with the other end over. The derivative of
//! an invariant `v` is `Σ_r (-1)^{#minus(r)} v(resolve(d, r))` over all
//! `2^k` resolutions of the `k` double points.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{ChordKind, End, TangleDiagram};
use crate::invariants::{Invariant, InvariantError};
use crate::poly::{int, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Choice {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("singular chord {0} has no resolution choice")]
    Unassigned(String),
    #[error("chord {0} is not singular")]
    NotSingular(String),
    #[error("unknown chord {0}")]
    UnknownChord(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// A choice of resolution for each double point, keyed by chord label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Resolution {
    pub assignment: BTreeMap<String, Choice>,
}

impl Resolution {
    pub fn new(assignment: impl IntoIterator<Item = (String, Choice)>) -> Self {
        Self { assignment: assignment.into_iter().collect() }
    }

    /// `(-1)` to the number of negative choices.
    pub fn weight(&self) -> i64 {
        let minus = self.assignment.values().filter(|&&c| c == Choice::Minus).count();
        if minus % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn singular_labels(d: &TangleDiagram) -> Vec<String> {
    d.chords.iter().filter(|c| c.is_singular()).map(|c| c.label.clone()).collect()
}

/// Replaces every double point by the crossing `r` selects for it.
pub fn resolve(d: &TangleDiagram, r: &Resolution) -> Result<TangleDiagram, SingularError> {
    for label in r.assignment.keys() {
        let k = d.chord_index(label).ok_or_else(|| SingularError::UnknownChord(label.clone()))?;
        if !d.chords[k].is_singular() {
            return Err(SingularError::NotSingular(label.clone()));
        }
    }
    let mut out = d.clone();
    for c in &mut out.chords {
        let ChordKind::Singular { frame } = c.kind else { continue };
        let choice = *r
            .assignment
            .get(&c.label)
            .ok_or_else(|| SingularError::Unassigned(c.label.clone()))?;
        let a_over = (frame > 0) == (choice == Choice::Plus);
        let sign = if choice == Choice::Plus { 1 } else { -1 };
        c.kind = ChordKind::Classical { sign, over: if a_over { End::A } else { End::B } };
    }
    Ok(out)
}

/// All `2^k` resolutions in a fixed order: the first singular chord varies
/// slowest, `Plus` before `Minus`.
pub fn resolutions(d: &TangleDiagram) -> Vec<Resolution> {
    let labels = singular_labels(d);
    let k = labels.len();
    (0..1usize << k)
        .map(|bits| {
            Resolution::new(labels.iter().enumerate().map(|(i, l)| {
                let minus = bits >> (k - 1 - i) & 1 == 1;
                (l.clone(), if minus { Choice::Minus } else { Choice::Plus })
            }))
        })
        .collect()
}

/// Alternating sum of `inv` over every resolution of the double points.
pub fn derivative(d: &TangleDiagram, inv: &Invariant) -> Result<LaurentPoly, SingularError> {
    let mut total = LaurentPoly::zero(d.ncomponents());
    for r in resolutions(d) {
        let value = inv.eval(&resolve(d, &r)?)?;
        total = &total + &value.scale(&int(r.weight()));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::equal_diagrams;
    use crate::gauss::parse;
    use crate::invariants::p_sc;

    const SVT: &str = "tangle 0 0\ncomponent K closed\nS1+ O2+ S1+ U2+";

    #[test]
    fn weights() {
        let r = Resolution::new([("1".into(), Choice::Minus), ("2".into(), Choice::Minus)]);
        assert_eq!(r.weight(), 1);
        let r = Resolution::new([("1".into(), Choice::Plus), ("2".into(), Choice::Minus)]);
        assert_eq!(r.weight(), -1);
    }

    #[test]
    fn no_double_points() {
        let d = parse("tangle 0 0\ncomponent K closed\nO1+ U1+").unwrap();
        assert_eq!(resolve(&d, &Resolution::default()).unwrap(), d);
        assert_eq!(derivative(&d, &Invariant::Psc).unwrap(), p_sc(&d).unwrap());
    }

    #[test]
    fn frame_convention() {
        let d = parse("tangle 0 0\ncomponent K closed\nS1+ S1+").unwrap();
        let plus = resolve(&d, &Resolution::new([("1".into(), Choice::Plus)])).unwrap();
        assert_eq!(plus.chords[0].kind, ChordKind::Classical { sign: 1, over: End::A });
        let minus = resolve(&d, &Resolution::new([("1".into(), Choice::Minus)])).unwrap();
        assert_eq!(minus.chords[0].kind, ChordKind::Classical { sign: -1, over: End::B });
        let d = parse("tangle 0 0\ncomponent K closed\nS1- S1-").unwrap();
        let plus = resolve(&d, &Resolution::new([("1".into(), Choice::Plus)])).unwrap();
        assert_eq!(plus.chords[0].kind, ChordKind::Classical { sign: 1, over: End::B });
    }

    #[test]
    fn singular_trefoil_resolves_to_virtual_trefoil() {
        let d = parse(SVT).unwrap();
        let plus = resolve(&d, &Resolution::new([("1".into(), Choice::Plus)])).unwrap();
        let vt = parse("tangle 0 0\ncomponent K closed\nO1+ O2+ U1+ U2+").unwrap();
        assert!(equal_diagrams(&plus, &vt));
    }

    #[test]
    fn singular_trefoil_derivative() {
        let d = parse(SVT).unwrap();
        let expect = LaurentPoly::parse("-2 + 2 t1", 1).unwrap();
        assert_eq!(derivative(&d, &Invariant::Psc).unwrap(), expect);
    }

    #[test]
    fn resolve_errors() {
        let d = parse(SVT).unwrap();
        assert_eq!(resolve(&d, &Resolution::default()), Err(SingularError::Unassigned("1".into())));
        let r = Resolution::new([("1".into(), Choice::Plus), ("2".into(), Choice::Plus)]);
        assert_eq!(resolve(&d, &r), Err(SingularError::NotSingular("2".into())));
        let r = Resolution::new([("7".into(), Choice::Plus)]);
        assert_eq!(resolve(&d, &r), Err(SingularError::UnknownChord("7".into())));
    }

    #[test]
    fn enumeration_order() {
        let d = parse("tangle 0 0\ncomponent K closed\nS1+ S2+ S1+ S2+").unwrap();
        let rs = resolutions(&d);
        assert_eq!(rs.len(), 4);
        assert_eq!(rs.iter().map(Resolution::weight).collect::<Vec<_>>(), [1, -1, -1, 1]);
        assert_eq!(rs[1].assignment["2"], Choice::Minus);
    }
}
