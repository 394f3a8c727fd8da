//! Sparse bivariate polynomials with non-negative integer coefficients.
//!
//! These drive the quadratic recurrence in [`crate::sequence`]: a
//! [`BivarPoly`] is a finite sum of monomials `c * X^i * Y^j` with `c > 0`
//! stored sparsely, subject to `F(0, 0) = 0` (no constant term). Only
//! evaluation is supported; there is deliberately no polynomial algebra
//! here.

use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{parse_int, Int};
use crate::error::{Error, Result};

/// Default cap on monomial exponents. The sequences these polynomials feed
/// grow doubly exponentially, so large degrees are never practical; a hard
/// error beats a silent memory blowup.
pub const DEFAULT_DEGREE_CAP: u32 = 16;

/// One monomial `coeff * X^deg_x * Y^deg_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub deg_x: u32,
    pub deg_y: u32,
    pub coeff: Int,
}

/// A nonzero sparse polynomial `F(X, Y)` with non-negative integer
/// coefficients and `F(0, 0) = 0`.
///
/// Monomials are kept unique and sorted by `(deg_x, deg_y)`; zero
/// coefficients are dropped and duplicates merged at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly {
    terms: Vec<Monomial>,
}

impl BivarPoly {
    /// Build a polynomial from `(deg_x, deg_y, coeff)` triples under the
    /// default degree cap.
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, Int)>,
    {
        Self::with_degree_cap(terms, DEFAULT_DEGREE_CAP)
    }

    /// As [`BivarPoly::new`] with an explicit exponent cap.
    pub fn with_degree_cap<I>(terms: I, cap: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, Int)>,
    {
        let mut merged: Vec<Monomial> = Vec::new();
        for (deg_x, deg_y, coeff) in terms {
            if coeff.is_negative() {
                return Err(Error::InvalidPoly(format!(
                    "coefficient {coeff} of X^{deg_x} Y^{deg_y} is negative"
                )));
            }
            if coeff.is_zero() {
                continue;
            }
            if deg_x > cap || deg_y > cap {
                return Err(Error::InvalidPoly(format!(
                    "exponent pair ({deg_x}, {deg_y}) exceeds the degree cap {cap}"
                )));
            }
            if deg_x == 0 && deg_y == 0 {
                return Err(Error::InvalidPoly(
                    "constant term violates F(0, 0) = 0".into(),
                ));
            }
            match merged.iter_mut().find(|m| m.deg_x == deg_x && m.deg_y == deg_y) {
                Some(m) => m.coeff += coeff,
                None => merged.push(Monomial { deg_x, deg_y, coeff }),
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidPoly("polynomial has no nonzero term".into()));
        }
        merged.sort_by_key(|m| (m.deg_x, m.deg_y));
        Ok(Self { terms: merged })
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::new([(1, 0, Int::from(1))]).expect("X is a valid polynomial")
    }

    /// The monomials in `(deg_x, deg_y)` order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// Exact value of `F(x, y)`.
    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        let mut acc = Int::zero();
        for m in &self.terms {
            acc += &m.coeff * x.pow(m.deg_x) * y.pow(m.deg_y);
        }
        acc
    }

    /// True if this is exactly the polynomial `X`.
    pub fn is_identity_x(&self) -> bool {
        self == &Self::x()
    }

    /// Parse a polynomial written either as monomial text (`"X"`, `"X+Y"`,
    /// `"2X^2*Y + 3Y"`) or as a JSON list of `[deg_x, deg_y, coeff]` triples.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('[') {
            let triples: Vec<(u32, u32, serde_json::Value)> = serde_json::from_str(spec)
                .map_err(|e| Error::Parse(format!("bad polynomial JSON: {e}")))?;
            let mut terms = Vec::new();
            for (dx, dy, c) in triples {
                let coeff = match &c {
                    serde_json::Value::String(s) => parse_int(s)?,
                    serde_json::Value::Number(n) => parse_int(&n.to_string())?,
                    other => {
                        return Err(Error::Parse(format!("bad coefficient {other}")));
                    }
                };
                terms.push((dx, dy, coeff));
            }
            return Self::new(terms);
        }
        let mut terms = Vec::new();
        for part in spec.split('+') {
            terms.push(parse_monomial(part)?);
        }
        Self::new(terms)
    }

    /// Render as monomial text, e.g. `"X^2*Y + 3*Y"`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mut factors = Vec::new();
            if !num_traits::One::is_one(&m.coeff) || (m.deg_x == 0 && m.deg_y == 0) {
                factors.push(m.coeff.to_string());
            }
            for (sym, deg) in [("X", m.deg_x), ("Y", m.deg_y)] {
                match deg {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    d => factors.push(format!("{sym}^{d}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn parse_monomial(part: &str) -> Result<(u32, u32, Int)> {
    let s: String = part.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if s.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut coeff_digits = String::new();
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        coeff_digits.push(bytes[pos] as char);
        pos += 1;
    }
    let coeff = if coeff_digits.is_empty() {
        Int::from(1)
    } else {
        parse_int(&coeff_digits)?
    };
    let mut deg_x = 0u32;
    let mut deg_y = 0u32;
    while pos < bytes.len() {
        let var = bytes[pos] as char;
        pos += 1;
        let mut exp = 1u32;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let mut digits = String::new();
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                digits.push(bytes[pos] as char);
                pos += 1;
            }
            exp = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
        }
        match var.to_ascii_uppercase() {
            'X' => deg_x += exp,
            'Y' => deg_y += exp,
            c => return Err(Error::Parse(format!("unexpected {c:?} in monomial {part:?}"))),
        }
    }
    Ok((deg_x, deg_y, coeff))
}

// JSON form: a list of [deg_x, deg_y, "coeff"] triples, coefficients as
// decimal strings like every other integer in the crate's JSON output.
impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(u32, u32, String)> = self
            .terms
            .iter()
            .map(|m| (m.deg_x, m.deg_y, m.coeff.to_string()))
            .collect();
        triples.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let triples: Vec<(u32, u32, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::new();
        for (dx, dy, c) in triples {
            terms.push((dx, dy, parse_int(&c).map_err(D::Error::custom)?));
        }
        Self::new(terms).map_err(D::Error::custom)
    }
}
