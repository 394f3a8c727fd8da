//! Generalized continued fractions and their convergents.
//!
//! A [`GeneralizedCF`] is the finite object
//!
//! ```text
//!             a1      a2            am
//! p  +  ----------------------------------
//!        b1  +  b2  +  ...  +  bm
//! ```
//!
//! written with 1-based indices throughout the API. Partial numerators must
//! be nonzero (a zero would silently truncate the fraction), while partial
//! denominators may be zero: formal fractions with `b_j = 0` arise naturally
//! and are handled either by the convergent recurrence or by the
//! concatenation formula in [`GeneralizedCF::contract_zero_denominator`].
//!
//! Convergents are computed by the classical three-term recurrence
//! `P_{k+2} = b_{k+2} P_{k+1} + a_{k+2} P_k` (same for `Q`) from
//! `P_0 = 0, Q_0 = 1, P_1 = a_1, Q_1 = b_1`, and every identity in this
//! crate is checked as exact rational equality on these tables.

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_integer, parse_rat, rat_to_string, Int, Rat};
use crate::error::{Error, Result};

/// One term of a generalized continued fraction: partial numerator `a`
/// over partial denominator `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfTerm {
    pub a: Rat,
    pub b: Rat,
}

impl CfTerm {
    pub fn new(a: Rat, b: Rat) -> Self {
        Self { a, b }
    }
}

/// A finite generalized continued fraction with an optional leading integer
/// part (default zero, used only by regular-style expansions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedCF {
    integer_part: Rat,
    terms: Vec<CfTerm>,
}

impl GeneralizedCF {
    /// Build a continued fraction from its terms. Rejects any zero partial
    /// numerator.
    pub fn new(terms: Vec<CfTerm>) -> Result<Self> {
        Self::with_integer_part(Rat::zero(), terms)
    }

    /// As [`GeneralizedCF::new`] with an explicit leading integer part.
    pub fn with_integer_part(integer_part: Rat, terms: Vec<CfTerm>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if t.a.is_zero() {
                return Err(Error::ZeroPartialNumerator { index: i + 1 });
            }
        }
        Ok(Self { integer_part, terms })
    }

    /// Convenience constructor from `(a, b)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rat, Rat)>,
    {
        Self::new(pairs.into_iter().map(|(a, b)| CfTerm::new(a, b)).collect())
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn integer_part(&self) -> &Rat {
        &self.integer_part
    }

    /// The `k`-th term, 1-based.
    pub fn term(&self, k: usize) -> &CfTerm {
        &self.terms[k - 1]
    }

    pub fn terms(&self) -> &[CfTerm] {
        &self.terms
    }

    /// Convergent numerators and denominators `P_0..P_m`, `Q_0..Q_m`.
    ///
    /// Zero `Q_k` inside the table are allowed; only final evaluation at a
    /// vanishing denominator is an error.
    pub fn convergents(&self, m: usize) -> Result<ConvergentTable> {
        if m > self.len() {
            return Err(Error::IndexOutOfRange { index: m, max: self.len() });
        }
        let mut p = Vec::with_capacity(m + 1);
        let mut q = Vec::with_capacity(m + 1);
        p.push(Rat::zero());
        q.push(Rat::one());
        if m >= 1 {
            p.push(self.terms[0].a.clone());
            q.push(self.terms[0].b.clone());
        }
        for k in 2..=m {
            let CfTerm { a, b } = &self.terms[k - 1];
            p.push(b * &p[k - 1] + a * &p[k - 2]);
            q.push(b * &q[k - 1] + a * &q[k - 2]);
        }
        Ok(ConvergentTable { p, q })
    }

    /// Exact value of the depth-`m` convergent, `integer_part + P_m/Q_m`.
    pub fn eval(&self, m: usize) -> Result<Rat> {
        let table = self.convergents(m)?;
        match table.value(m) {
            Some(v) => Ok(&self.integer_part + v),
            None => Err(Error::ZeroDenominatorConvergent { index: m }),
        }
    }

    /// Exact value of the full fraction.
    pub fn value(&self) -> Result<Rat> {
        self.eval(self.len())
    }

    /// Product of the partial numerators `a_1 a_2 ... a_k`.
    pub fn numerator_product(&self, k: usize) -> Rat {
        self.terms[..k].iter().fold(Rat::one(), |acc, t| acc * &t.a)
    }

    /// Rescale term `k` by `c_k`: `a'_k = c_k c_{k-1} a_k`, `b'_k = c_k b_k`
    /// with `c_0 = 1`. Every defined convergent value is unchanged.
    pub fn equivalence_scale(&self, scale: &[Rat]) -> Result<Self> {
        if scale.len() != self.len() {
            return Err(Error::IndexOutOfRange { index: scale.len(), max: self.len() });
        }
        if let Some(i) = scale.iter().position(Rat::is_zero) {
            return Err(Error::ZeroScaleFactor { index: i + 1 });
        }
        let mut terms = Vec::with_capacity(self.len());
        let mut prev = Rat::one();
        for (t, c) in self.terms.iter().zip(scale) {
            terms.push(CfTerm::new(&t.a * c * &prev, &t.b * c));
            prev = c.clone();
        }
        Self::with_integer_part(self.integer_part.clone(), terms)
    }

    /// Collapse a zero partial denominator `b_j = 0` by the concatenation
    /// formula, shortening the fraction by two terms:
    ///
    /// ```text
    ///  a_{j-1}   a_j   a_{j+1}   A        a_{j-1}                      a_j A / a_{j+1}
    ///  ------- + --- + ------- + -   =   ----------------------------- + -------------
    ///  b_{j-1}    0    b_{j+1}   B        b_{j-1} + (a_j/a_{j+1}) b_{j+1}      B
    /// ```
    ///
    /// Convergent values at indices past the contraction point (and the
    /// final value) are preserved exactly.
    pub fn contract_zero_denominator(&self, j: usize) -> Result<Self> {
        if j < 2 || j + 1 > self.len() {
            return Err(Error::IndexOutOfRange { index: j, max: self.len() });
        }
        if !self.terms[j - 1].b.is_zero() {
            return Err(Error::NonzeroPartialDenominator { index: j });
        }
        let a_prev = &self.terms[j - 2].a;
        let b_prev = &self.terms[j - 2].b;
        let a_j = &self.terms[j - 1].a;
        let a_next = &self.terms[j].a;
        let b_next = &self.terms[j].b;
        let ratio = a_j / a_next;

        let mut terms: Vec<CfTerm> = self.terms[..j - 2].to_vec();
        terms.push(CfTerm::new(a_prev.clone(), b_prev + &ratio * b_next));
        if let Some(follow) = self.terms.get(j + 1) {
            terms.push(CfTerm::new(&ratio * &follow.a, follow.b.clone()));
            terms.extend_from_slice(&self.terms[j + 2..]);
        }
        Self::with_integer_part(self.integer_part.clone(), terms)
    }

    /// Interpret the fraction as a regular continued fraction
    /// `[a0; q1, q2, ...]`.
    ///
    /// Succeeds when the integer part is an integer, every partial numerator
    /// is exactly 1, and every partial denominator is a non-negative integer
    /// with all but the last at least 1 (a final quotient of 0 can arise
    /// from truncating a formal expansion).
    pub fn to_regular(&self) -> Result<RegularCF> {
        if !is_integer(&self.integer_part) {
            return Err(Error::NotRegular {
                index: 0,
                reason: format!("integer part {} is not an integer", self.integer_part),
            });
        }
        let mut quotients = Vec::with_capacity(self.len());
        for (i, t) in self.terms.iter().enumerate() {
            let k = i + 1;
            if !t.a.is_one() {
                return Err(Error::NotRegular {
                    index: k,
                    reason: format!("partial numerator {} is not 1", t.a),
                });
            }
            if !is_integer(&t.b) || t.b.is_negative() {
                return Err(Error::NotRegular {
                    index: k,
                    reason: format!("partial denominator {} is not a non-negative integer", t.b),
                });
            }
            if t.b.is_zero() && k < self.len() {
                return Err(Error::NotRegular {
                    index: k,
                    reason: "interior partial quotient is zero".into(),
                });
            }
            quotients.push(t.b.to_integer());
        }
        RegularCF::new(self.integer_part.to_integer(), quotients)
    }
}

/// The `(P_k, Q_k)` table of a continued fraction, indices `0..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    p: Vec<Rat>,
    q: Vec<Rat>,
}

impl ConvergentTable {
    /// Depth of the table (the largest valid index).
    pub fn depth(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, k: usize) -> &Rat {
        &self.p[k]
    }

    pub fn q(&self, k: usize) -> &Rat {
        &self.q[k]
    }

    /// `P_k / Q_k`, or `None` when `Q_k = 0` (the convergent is formally
    /// infinite at that depth).
    pub fn value(&self, k: usize) -> Option<Rat> {
        if self.q[k].is_zero() {
            None
        } else {
            Some(&self.p[k] / &self.q[k])
        }
    }
}

/// A regular continued fraction `[a0; q1, q2, ..., qm]`: all partial
/// numerators 1, integer quotients, every quotient at least 1 except
/// possibly the last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularCF {
    a0: Int,
    quotients: Vec<Int>,
}

impl RegularCF {
    pub fn new(a0: Int, quotients: Vec<Int>) -> Result<Self> {
        let last = quotients.len();
        for (i, q) in quotients.iter().enumerate() {
            let k = i + 1;
            if q.is_negative() || (q.is_zero() && k < last) {
                return Err(Error::NotRegular {
                    index: k,
                    reason: format!("partial quotient {q} out of place"),
                });
            }
        }
        Ok(Self { a0, quotients })
    }

    pub fn integer_part(&self) -> &Int {
        &self.a0
    }

    pub fn quotients(&self) -> &[Int] {
        &self.quotients
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// The same fraction as a [`GeneralizedCF`] (all partial numerators 1).
    pub fn to_cf(&self) -> GeneralizedCF {
        let terms = self
            .quotients
            .iter()
            .map(|q| CfTerm::new(Rat::one(), Rat::from_integer(q.clone())))
            .collect();
        GeneralizedCF::with_integer_part(Rat::from_integer(self.a0.clone()), terms)
            .expect("unit numerators are nonzero")
    }

    /// Exact value of the full expansion.
    pub fn value(&self) -> Result<Rat> {
        self.to_cf().value()
    }

    /// Bracket notation, e.g. `[1; 1, 2, 8]`.
    pub fn to_bracket_string(&self) -> String {
        if self.quotients.is_empty() {
            return format!("[{};]", self.a0);
        }
        let qs: Vec<String> = self.quotients.iter().map(Int::to_string).collect();
        format!("[{}; {}]", self.a0, qs.join(", "))
    }
}

impl Serialize for GeneralizedCF {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GeneralizedCF", 2)?;
        st.serialize_field("integer_part", &rat_to_string(&self.integer_part))?;
        let terms: Vec<[String; 2]> = self
            .terms
            .iter()
            .map(|t| [rat_to_string(&t.a), rat_to_string(&t.b)])
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GeneralizedCF {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            integer_part: Option<String>,
            terms: Vec<[String; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let integer_part = match raw.integer_part {
            Some(s) => parse_rat(&s).map_err(D::Error::custom)?,
            None => Rat::zero(),
        };
        let mut terms = Vec::with_capacity(raw.terms.len());
        for [a, b] in &raw.terms {
            terms.push(CfTerm::new(
                parse_rat(a).map_err(D::Error::custom)?,
                parse_rat(b).map_err(D::Error::custom)?,
            ));
        }
        Self::with_integer_part(integer_part, terms).map_err(D::Error::custom)
    }
}

impl Serialize for RegularCF {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RegularCF", 2)?;
        st.serialize_field("a0", &self.a0.to_string())?;
        let qs: Vec<String> = self.quotients.iter().map(Int::to_string).collect();
        st.serialize_field("quotients", &qs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RegularCF {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a0: String,
            quotients: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let a0 = crate::arith::parse_int(&raw.a0).map_err(D::Error::custom)?;
        let mut quotients = Vec::with_capacity(raw.quotients.len());
        for q in &raw.quotients {
            quotients.push(crate::arith::parse_int(q).map_err(D::Error::custom)?);
        }
        Self::new(a0, quotients).map_err(D::Error::custom)
    }
}
