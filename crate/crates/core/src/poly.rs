//! Weighted-homogeneous polynomials and their Newton point sets.
//!
//! Variables are `W, X, Y, Z`, carrying the weights `a0, a1, a2, a3` in that
//! order. Primed names (`W'`, `X′`, ...) are the same variables.

use std::collections::BTreeSet;
use std::fmt;

use log::warn;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{coords_in_basis, sublattice_index, IntVec3, IntVec4};

const VARIABLES: [char; 4] = ['W', 'X', 'Y', 'Z'];

/// Weights of `(W, X, Y, Z)`; the anticanonical degree `d` is their sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct WeightSystem([i64; 4]);

impl WeightSystem {
    /// Rejects nonpositive weights. A common factor is accepted with a warning.
    pub fn new(a: [i64; 4]) -> Result<Self> {
        if let Some(index) = a.iter().position(|&w| w < 1) {
            return Err(Error::InvalidWeight {
                index,
                value: a[index],
            });
        }
        let w = WeightSystem(a);
        if !w.is_well_posed() {
            warn!("weights {a:?} share a common factor; the weighted projective space is not well-posed");
        }
        Ok(w)
    }

    pub fn weights(&self) -> [i64; 4] {
        self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_well_posed(&self) -> bool {
        self.0.iter().fold(0i64, |g, w| g.gcd(w)) == 1
    }

    pub fn as_vec4(&self) -> IntVec4 {
        IntVec4(self.0)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> i64 {
        self.as_vec4().dot(&m.0)
    }
}

impl TryFrom<[i64; 4]> for WeightSystem {
    type Error = Error;
    fn try_from(a: [i64; 4]) -> Result<Self> {
        WeightSystem::new(a)
    }
}

impl From<WeightSystem> for [i64; 4] {
    fn from(w: WeightSystem) -> Self {
        w.0
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "P({a},{b},{c},{d})")
    }
}

/// Exponent vector of `W^i X^j Y^k Z^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub IntVec4);

impl Monomial {
    pub fn exponents(&self) -> IntVec4 {
        self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (var, &e) in VARIABLES.iter().zip(self.0 .0.iter()) {
            if e == 0 {
                continue;
            }
            if wrote {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Support of a polynomial; coefficients are not kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    monomials: Vec<Monomial>,
}

impl Polynomial {
    /// Builds from a nonempty monomial list, dropping repeats.
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Option<Self> {
        let mut seen = BTreeSet::new();
        let monomials: Vec<Monomial> = monomials.into_iter().filter(|m| seen.insert(*m)).collect();
        (!monomials.is_empty()).then_some(Polynomial { monomials })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn support(&self) -> BTreeSet<IntVec4> {
        self.monomials.iter().map(|m| m.0).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Byte offset of the current character in the original text.
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Option<i64> {
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as i64))
                .expect("integer overflow in literal");
            self.pos += 1;
        }
        (self.pos > start).then_some(value)
    }

    fn exponent(&mut self) -> Result<i64> {
        let at = self.offset();
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        if matches!(self.peek(), Some('-') | Some('+')) {
            return Err(Error::BadExponent { position: at });
        }
        let e = self
            .integer()
            .ok_or_else(|| self.syntax("expected exponent"))?;
        if braced && self.bump() != Some('}') {
            self.pos -= 1;
            return Err(self.syntax("expected '}'"));
        }
        if e == 0 {
            return Err(Error::BadExponent { position: at });
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Monomial> {
        let mut exps = [0i64; 4];
        let mut factors = 0;
        if self.integer().is_some() {
            factors += 1;
            if self.peek() == Some('*') {
                self.pos += 1;
            }
        }
        while let Some(c) = self.peek() {
            if c == '+' {
                break;
            }
            if factors > 0 && c == '*' {
                self.pos += 1;
            }
            let at = self.offset();
            let Some(c) = self.bump() else {
                return Err(self.syntax("expected a variable after '*'"));
            };
            if !c.is_alphabetic() {
                self.pos -= 1;
                return Err(self.syntax(format!("unexpected character '{c}'")));
            }
            let var =
                VARIABLES
                    .iter()
                    .position(|&v| v == c)
                    .ok_or_else(|| Error::UnknownVariable {
                        name: c.to_string(),
                        position: at,
                    })?;
            while matches!(self.peek(), Some('\'') | Some('′')) {
                self.pos += 1;
            }
            let e = if self.peek() == Some('^') {
                self.pos += 1;
                self.exponent()?
            } else {
                1
            };
            exps[var] = exps[var]
                .checked_add(e)
                .expect("integer overflow in exponent");
            factors += 1;
        }
        if factors == 0 {
            return Err(self.syntax("empty term"));
        }
        Ok(Monomial(IntVec4(exps)))
    }
}

/// Parses `X^5Y + XY^3 + Z^2 + W^10*X^2` style input.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let mut p = Parser::new(text);
    let mut monomials = vec![p.term()?];
    while p.peek() == Some('+') {
        p.pos += 1;
        monomials.push(p.term()?);
    }
    if p.peek().is_some() {
        return Err(p.syntax("trailing input"));
    }
    Ok(Polynomial::new(monomials).expect("at least one term parsed"))
}

/// Returns `d` when every monomial has weighted degree `d = a0+a1+a2+a3`.
pub fn check_quasihomogeneous(p: &Polynomial, w: &WeightSystem) -> Result<i64> {
    let degrees: Vec<(IntVec4, i64)> = p
        .monomials()
        .iter()
        .map(|m| (m.0, w.weighted_degree(m)))
        .collect();
    let first = degrees[0].1;
    if degrees.iter().any(|&(_, d)| d != first) {
        return Err(Error::MixedDegrees(degrees));
    }
    if first != w.degree() {
        return Err(Error::DegreeNotD {
            degree: first,
            expected: w.degree(),
        });
    }
    Ok(first)
}

/// Three vectors spanning `{v in Z^4 : a.v = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AmbientBasis(pub [IntVec4; 3]);

impl AmbientBasis {
    /// Checks `a.e_i = 0` and linear independence. The vectors may span a
    /// proper sublattice of the kernel; see [`AmbientBasis::index`].
    pub fn new(vectors: [IntVec4; 3], weights: &WeightSystem) -> Result<Self> {
        sublattice_index(&vectors, weights)?;
        Ok(AmbientBasis(vectors))
    }

    /// Index of the span inside `{v in Z^4 : a.v = 0}`; 1 for a lattice basis.
    pub fn index(&self, weights: &WeightSystem) -> Result<i64> {
        sublattice_index(&self.0, weights)
    }

    pub fn vectors(&self) -> &[IntVec4; 3] {
        &self.0
    }

    /// `c1 e1 + c2 e2 + c3 e3`.
    pub fn combine(&self, c: &IntVec3) -> IntVec4 {
        (0..3).fold(IntVec4::default(), |acc, i| acc + self.0[i] * c.0[i])
    }
}

/// Lattice point of a degree-`d` monomial: coordinates of `m - (1,1,1,1)`.
pub fn monomial_to_point(m: &Monomial, w: &WeightSystem, b: &AmbientBasis) -> Result<IntVec3> {
    let degree = w.weighted_degree(m);
    if degree != w.degree() {
        return Err(Error::DegreeNotD {
            degree,
            expected: w.degree(),
        });
    }
    coords_in_basis(&(m.0 - IntVec4::ONES), b.vectors())
}

/// Images of all monomials, in monomial order.
pub fn newton_points(p: &Polynomial, w: &WeightSystem, b: &AmbientBasis) -> Result<Vec<IntVec3>> {
    check_quasihomogeneous(p, w)?;
    p.monomials()
        .iter()
        .map(|m| monomial_to_point(m, w, b))
        .collect()
}
