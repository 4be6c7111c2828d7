//! Line-oriented text format for tangle diagrams.
//!
//! ```text
//! # the clasp
//! tangle 2 2
//! component A long T1:in B1:out
//! O1+ U2+
//! component B long T2:in B2:out
//! U1+ O2+
//! ```
//!
//! Grammar (whitespace separated, `#` starts a comment):
//!
//! ```text
//! file      := "tangle" INT INT component*
//! component := "component" NAME kind NEWLINE visit*
//! kind      := "closed" | "long" BPOINT BPOINT
//! BPOINT    := ("T"|"B") INT ":" ("in"|"out")
//! visit     := ("O"|"U"|"S") LABEL ("+"|"-")
//! ```
//!
//! `O`/`U` mark the over and under passage of a classical crossing, with
//! the crossing sign repeated at both. `S` marks a double point; its sign
//! is the frame relative to the first passage in file order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{
    BoundaryPoint, Chord, ChordKind, Component, ComponentKind, Direction, End, Side,
    TangleDiagram, Visit,
};

/// Line and column range of a token; lines and columns are 1-based,
/// `col_end` is exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub col_start: usize,
    pub col_end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}", self.line, self.col_start, self.col_end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    span: SourceSpan,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(k) => &line[..k],
            None => line,
        };
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, ch)) = chars.peek() {
            if ch.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let col_start = line[..start].chars().count() + 1;
            let col_end = col_start + line[start..end].chars().count();
            out.push(Token { text: &line[start..end], span: SourceSpan { line: ln + 1, col_start, col_end } });
        }
    }
    out
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_.+".contains(c))
}

fn err<T>(span: SourceSpan, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { message: message.into(), span })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Passage {
    Over,
    Under,
    Singular,
}

struct PendingChord {
    label: String,
    first: (Passage, i8, SourceSpan),
    second: Option<(Passage, i8)>,
}

struct Parser<'a> {
    toks: Vec<Token<'a>>,
    pos: usize,
    end_span: SourceSpan,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Token<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        match self.toks.get(self.pos) {
            Some(&t) => {
                self.pos += 1;
                Ok(t)
            }
            None => err(self.end_span, format!("unexpected end of input, expected {what}")),
        }
    }

    fn int(&mut self, what: &str) -> Result<usize, ParseError> {
        let t = self.next(what)?;
        match t.text.parse() {
            Ok(v) => Ok(v),
            Err(_) => err(t.span, format!("expected {what}, found {:?}", t.text)),
        }
    }

    fn bpoint(&mut self) -> Result<(BoundaryPoint, SourceSpan), ParseError> {
        let t = self.next("boundary point")?;
        let bad = || err(t.span, format!("malformed boundary point {:?}", t.text));
        let Some((pt, dir)) = t.text.split_once(':') else { return bad() };
        let side = match pt.chars().next() {
            Some('T') => Side::Top,
            Some('B') => Side::Bottom,
            _ => return bad(),
        };
        let Ok(index) = pt[1..].parse::<usize>() else { return bad() };
        let direction = match dir {
            "in" => Direction::In,
            "out" => Direction::Out,
            _ => return bad(),
        };
        Ok((BoundaryPoint { side, index, direction }, t.span))
    }
}

/// Parses and validates a diagram.
pub fn parse(text: &str) -> Result<TangleDiagram, ParseError> {
    let toks = tokenize(text);
    let last_line = text.lines().count().max(1);
    let end_span = SourceSpan { line: last_line, col_start: 1, col_end: 1 };
    let mut p = Parser { toks, pos: 0, end_span };

    let head = p.next("\"tangle\"")?;
    if head.text != "tangle" {
        return err(head.span, format!("expected \"tangle\", found {:?}", head.text));
    }
    let top = p.int("top point count")?;
    let bottom = p.int("bottom point count")?;

    let mut d = TangleDiagram::new(top, bottom);
    let mut pending: Vec<PendingChord> = Vec::new();
    let mut by_label: HashMap<String, usize> = HashMap::new();
    let mut names: HashMap<String, ()> = HashMap::new();
    let mut boundary_used: HashMap<(Side, usize), ()> = HashMap::new();

    while let Some(t) = p.peek() {
        if t.text != "component" {
            return err(t.span, format!("expected \"component\", found {:?}", t.text));
        }
        p.pos += 1;
        let name = p.next("component name")?;
        if !is_name(name.text) {
            return err(name.span, format!("invalid component name {:?}", name.text));
        }
        if names.insert(name.text.to_string(), ()).is_some() {
            return err(name.span, format!("duplicate component name {}", name.text));
        }
        let kind_tok = p.next("component kind")?;
        let kind = match kind_tok.text {
            "closed" => ComponentKind::Closed,
            "long" => {
                let (start, s1) = p.bpoint()?;
                let (end, s2) = p.bpoint()?;
                if start.direction != Direction::In {
                    return err(s1, "long component must start at an in point");
                }
                if end.direction != Direction::Out {
                    return err(s2, "long component must end at an out point");
                }
                for (bp, span) in [(start, s1), (end, s2)] {
                    let limit = match bp.side {
                        Side::Top => top,
                        Side::Bottom => bottom,
                    };
                    if bp.index == 0 || bp.index > limit {
                        return err(span, format!("boundary point {bp} out of range"));
                    }
                    if boundary_used.insert((bp.side, bp.index), ()).is_some() {
                        return err(span, format!("boundary point {bp} reused"));
                    }
                }
                ComponentKind::Long { start, end }
            }
            other => return err(kind_tok.span, format!("expected \"closed\" or \"long\", found {other:?}")),
        };
        // visits must start on a later line than the header
        let header_line = kind_tok.span.line.max(p.toks[p.pos - 1].span.line);
        let mut visits = Vec::new();
        while let Some(v) = p.peek() {
            if v.text == "component" {
                break;
            }
            if v.span.line == header_line {
                return err(v.span, "visits must start on a new line");
            }
            p.pos += 1;
            let (passage, label, sign) = parse_visit(v)?;
            match by_label.get(label) {
                None => {
                    by_label.insert(label.to_string(), pending.len());
                    visits.push(Visit { chord: pending.len(), end: End::A });
                    pending.push(PendingChord {
                        label: label.to_string(),
                        first: (passage, sign, v.span),
                        second: None,
                    });
                }
                Some(&k) => {
                    let pc = &mut pending[k];
                    if pc.second.is_some() {
                        return err(v.span, format!("chord {label} appears more than twice"));
                    }
                    let (p1, s1, _) = pc.first;
                    match (p1, passage) {
                        (Passage::Over, Passage::Under)
                        | (Passage::Under, Passage::Over)
                        | (Passage::Singular, Passage::Singular) => {}
                        (Passage::Singular, _) | (_, Passage::Singular) => {
                            return err(v.span, format!("chord {label} mixes singular and classical passages"))
                        }
                        _ => return err(v.span, format!("chord {label} needs one O and one U passage")),
                    }
                    if s1 != sign {
                        return err(v.span, format!("sign mismatch for chord {label}"));
                    }
                    pc.second = Some((passage, sign));
                    visits.push(Visit { chord: k, end: End::B });
                }
            }
        }
        d.components.push(Component { name: name.text.to_string(), kind, visits });
    }

    for pc in &pending {
        if pc.second.is_none() {
            return err(pc.first.2, format!("dangling chord {}", pc.label));
        }
        let (passage, sign, _) = pc.first;
        let kind = match passage {
            Passage::Over => ChordKind::Classical { sign, over: End::A },
            Passage::Under => ChordKind::Classical { sign, over: End::B },
            Passage::Singular => ChordKind::Singular { frame: sign },
        };
        d.chords.push(Chord { label: pc.label.clone(), kind });
    }

    if let Some(v) = d.validate().into_iter().next() {
        return err(SourceSpan { line: 1, col_start: 1, col_end: 1 }, v.to_string());
    }
    Ok(d)
}

fn parse_visit(t: Token<'_>) -> Result<(Passage, &str, i8), ParseError> {
    let s = t.text;
    let bad = || err(t.span, format!("malformed visit {s:?}"));
    if s.len() < 3 || !s.is_ascii() {
        return bad();
    }
    let passage = match &s[..1] {
        "O" => Passage::Over,
        "U" => Passage::Under,
        "S" => Passage::Singular,
        _ => return bad(),
    };
    let sign = match &s[s.len() - 1..] {
        "+" => 1,
        "-" => -1,
        _ => return bad(),
    };
    let label = &s[1..s.len() - 1];
    if !is_label(label) {
        return bad();
    }
    Ok((passage, label, sign))
}

/// Canonical text of a valid diagram. Closed components are written from
/// their stored basepoint; singular frames are rewritten relative to the
/// first written passage.
pub fn serialize(d: &TangleDiagram) -> String {
    let mut out = format!("tangle {} {}\n", d.top, d.bottom);
    let mut written = vec![false; d.chords.len()];
    let mut first_end = vec![End::A; d.chords.len()];
    for comp in &d.components {
        match comp.kind {
            ComponentKind::Closed => out += &format!("component {} closed\n", comp.name),
            ComponentKind::Long { start, end } => {
                out += &format!("component {} long {start} {end}\n", comp.name)
            }
        }
        if comp.visits.is_empty() {
            continue;
        }
        let toks: Vec<String> = comp
            .visits
            .iter()
            .map(|v| {
                let c = &d.chords[v.chord];
                if !written[v.chord] {
                    written[v.chord] = true;
                    first_end[v.chord] = v.end;
                }
                let sg = |s: i8| if s > 0 { '+' } else { '-' };
                match c.kind {
                    ChordKind::Classical { sign, over } => {
                        let ou = if over == v.end { 'O' } else { 'U' };
                        format!("{ou}{}{}", c.label, sg(sign))
                    }
                    ChordKind::Singular { frame } => {
                        let f = if first_end[v.chord] == End::A { frame } else { -frame };
                        format!("S{}{}", c.label, sg(f))
                    }
                }
            })
            .collect();
        out += &toks.join(" ");
        out.push('\n');
    }
    out
}
