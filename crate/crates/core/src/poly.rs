//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Every invariant in this crate lands in `Q[t_1^{±1}, ..., t_n^{±1}]` with
//! `n` equal to the component count of the diagram. Only sums of monomials
//! are ever formed, so there is no general multiplication.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exponent vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCount(usize, usize),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid polynomial text: {0}")]
    BadText(String),
}

/// Parses `"p/q"` or an integer literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Exponent vector, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exps(pub Vec<i64>);

// Integers are ordered 0, 1, -1, 2, -2, ... and vectors lexicographically
// in that order, so constants come first and t^k precedes t^-k.
fn zigzag(e: i64) -> u64 {
    if e > 0 {
        2 * e as u64 - 1
    } else {
        2 * e.unsigned_abs()
    }
}

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.0.iter().map(|&e| zigzag(e));
        let r = other.0.iter().map(|&e| zigzag(e));
        l.cmp(r)
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exps, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// Single-term polynomial `coeff * t^exps`; zero when `coeff` is zero.
    pub fn mono(coeff: Rational, exps: &[i64], nvars: usize) -> Result<Self, PolyError> {
        if exps.len() != nvars {
            return Err(PolyError::LengthMismatch { expected: nvars, got: exps.len() });
        }
        let mut p = Self::zero(nvars);
        p.add_term(exps.to_vec(), coeff);
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(&Exps(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * t^exps` in place. Panics on a length mismatch.
    pub(crate) fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let key = Exps(exps);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCount(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    /// Substitutes 1 for every variable.
    pub fn eval_all_ones(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Renames variable `i` to `target[i]` in a ring with `nvars` variables.
    /// Exponents of variables sent to the same target add up.
    pub fn rename_vars(&self, target: &[usize], nvars: usize) -> Self {
        assert_eq!(target.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut v = vec![0; nvars];
            for (i, &k) in e.0.iter().enumerate() {
                v[target[i]] += k;
            }
            out.add_term(v, c.clone());
        }
        out
    }

    /// Deterministic text form, e.g. `-2 + 2 t1` or `1 t1 t2^-1 + 2 t1^-1 t2`.
    pub fn render_canonical(&self) -> String {
        self.to_string()
    }

    /// Term list for JSON output, in canonical order.
    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(e, c)| Term { coeff: c.to_string(), exps: e.0.clone() })
            .collect()
    }

    pub fn from_terms(nvars: usize, terms: &[Term]) -> Result<Self, PolyError> {
        let mut p = Self::zero(nvars);
        for t in terms {
            if t.exps.len() != nvars {
                return Err(PolyError::LengthMismatch { expected: nvars, got: t.exps.len() });
            }
            p.add_term(t.exps.clone(), parse_rational(&t.coeff)?);
        }
        Ok(p)
    }

    /// Inverse of [`render_canonical`](Self::render_canonical).
    pub fn parse(text: &str, nvars: usize) -> Result<Self, PolyError> {
        let bad = |m: &str| PolyError::BadText(format!("{m} in {text:?}"));
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(nvars));
        }
        let mut p = Self::zero(nvars);
        let mut toks = text.split_whitespace().peekable();
        let mut negate = false;
        loop {
            let c = toks.next().ok_or_else(|| bad("missing coefficient"))?;
            let mut c = parse_rational(c)?;
            if negate {
                c = -c;
            }
            let mut exps = vec![0; nvars];
            while let Some(tok) = toks.peek() {
                let Some(rest) = tok.strip_prefix('t') else { break };
                let (var, e) = match rest.split_once('^') {
                    Some((v, e)) => (v, e.parse::<i64>().map_err(|_| bad("bad exponent"))?),
                    None => (rest, 1),
                };
                let var: usize = var.parse().map_err(|_| bad("bad variable"))?;
                if var == 0 || var > nvars {
                    return Err(bad("variable out of range"));
                }
                exps[var - 1] += e;
                toks.next();
            }
            p.add_term(exps, c);
            match toks.next() {
                None => break,
                Some("+") => negate = false,
                Some("-") => negate = true,
                Some(_) => return Err(bad("expected + or -")),
            }
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let c = if k == 0 {
                c.clone()
            } else if c.is_negative() {
                write!(f, " - ")?;
                -c
            } else {
                write!(f, " + ")?;
                c.clone()
            };
            write!(f, "{c}")?;
            for (i, &x) in e.0.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, " t{}", i + 1)?,
                    _ => write!(f, " t{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self + &(-rhs)
    }
}

/// One entry of the JSON term-list form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub exps: Vec<i64>,
}
