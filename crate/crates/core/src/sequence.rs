//! Integer sequences defined by the quadratic recurrence
//! `x_{n+2} x_n = x_{n+1}^2 (F_n(x_n, x_{n+1}) + 1)` with `x_0 = 1`.
//!
//! For any family of polynomials `F_n` with non-negative integer
//! coefficients, `F_n(0, 0) = 0`, and any starting value `x_1 > 0`, the
//! recurrence produces positive integers satisfying `x_n | x_{n+1}`,
//! `x_n | F_n(x_n, x_{n+1})`, `x_{n+2} > x_{n+1}^2`, and the
//! doubly-exponential lower bound `x_n >= 2^(2^(n-2))` for `n >= 2`. Every
//! generated prefix is checked against those facts, and
//! [`check_invariants`] re-verifies them on demand (including on tampered
//! inputs, where it reports rather than panics).
//!
//! The `F = X, x_1 = 1` instance is OEIS A001697 (1, 1, 2, 8, 96, ...),
//! which also satisfies `x_{n+1} = x_n (x_0 + ... + x_n)`; the two
//! definitions are kept as independent routes and tested against each
//! other.

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{exact_div, parse_int, Int};
use crate::error::{Error, Result};
use crate::poly::BivarPoly;

/// Default cap on the bit size of any generated term (the growth is doubly
/// exponential, so this bounds the index around 24 for the simplest family).
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// The polynomial family driving the recurrence: either one stationary
/// polynomial used at every index or an explicit per-index list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecurrenceFamily {
    Stationary(BivarPoly),
    PerIndex(Vec<BivarPoly>),
}

/// A recurrence instance: the family `{F_n}`, the seed `x_1`, and a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRecurrence {
    family: RecurrenceFamily,
    x1: Int,
    name: String,
}

impl PolyRecurrence {
    /// Stationary family: the same `F` at every index.
    pub fn stationary(f: BivarPoly, x1: Int, name: impl Into<String>) -> Result<Self> {
        Self::new(RecurrenceFamily::Stationary(f), x1, name)
    }

    /// Fully general per-index family `F_0, F_1, ...`.
    pub fn per_index(fs: Vec<BivarPoly>, x1: Int, name: impl Into<String>) -> Result<Self> {
        if fs.is_empty() {
            return Err(Error::InvalidPoly("per-index family is empty".into()));
        }
        Self::new(RecurrenceFamily::PerIndex(fs), x1, name)
    }

    fn new(family: RecurrenceFamily, x1: Int, name: impl Into<String>) -> Result<Self> {
        if !x1.is_positive() {
            return Err(Error::PreconditionViolated(format!(
                "x_1 must be a positive integer, got {x1}"
            )));
        }
        Ok(Self { family, x1, name: name.into() })
    }

    /// The A001697 preset: `F = X`, `x_1 = 1`.
    pub fn a001697() -> Self {
        Self::stationary(BivarPoly::x(), Int::one(), "a001697")
            .expect("preset parameters are valid")
    }

    pub fn x1(&self) -> &Int {
        &self.x1
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `F_n`, or an error for a per-index family that does not reach `n`.
    pub fn f_at(&self, n: usize) -> Result<&BivarPoly> {
        match &self.family {
            RecurrenceFamily::Stationary(f) => Ok(f),
            RecurrenceFamily::PerIndex(fs) => fs.get(n).ok_or(Error::IndexOutOfRange {
                index: n,
                max: fs.len().saturating_sub(1),
            }),
        }
    }

    /// True when every polynomial of the family is exactly `X` (the family
    /// whose alternating-series expansion needs the contraction path).
    pub fn is_identity_x_family(&self) -> bool {
        match &self.family {
            RecurrenceFamily::Stationary(f) => f.is_identity_x(),
            RecurrenceFamily::PerIndex(fs) => fs.iter().all(BivarPoly::is_identity_x),
        }
    }
}

// Config document: {"f": <polynomial>, "x1": "3", "name": "..."} for a
// stationary family, or "f_per_index": [<polynomial>, ...] for the general
// case. Polynomials use the monomial-triple form of [`BivarPoly`]; on
// input, `f` may also be monomial text like "X+Y".
impl Serialize for PolyRecurrence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PolyRecurrence", 3)?;
        match &self.family {
            RecurrenceFamily::Stationary(f) => st.serialize_field("f", f)?,
            RecurrenceFamily::PerIndex(fs) => st.serialize_field("f_per_index", fs)?,
        }
        st.serialize_field("x1", &self.x1.to_string())?;
        st.serialize_field("name", &self.name)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PolyRecurrence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            f: Option<serde_json::Value>,
            #[serde(default)]
            f_per_index: Option<Vec<BivarPoly>>,
            x1: String,
            #[serde(default)]
            name: Option<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let x1 = parse_int(&raw.x1).map_err(D::Error::custom)?;
        let name = raw.name.unwrap_or_else(|| "recurrence".into());
        match (raw.f, raw.f_per_index) {
            (Some(value), None) => {
                let poly = match value {
                    serde_json::Value::String(text) => {
                        BivarPoly::parse(&text).map_err(D::Error::custom)?
                    }
                    other => serde_json::from_value(other).map_err(D::Error::custom)?,
                };
                Self::stationary(poly, x1, name).map_err(D::Error::custom)
            }
            (None, Some(fs)) => Self::per_index(fs, x1, name).map_err(D::Error::custom),
            _ => Err(D::Error::custom("give exactly one of \"f\" or \"f_per_index\"")),
        }
    }
}

/// A generated (or supplied) prefix `x_0, x_1, ..., x_N` of positive
/// integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePrefix {
    values: Vec<Int>,
    name: String,
}

impl SequencePrefix {
    /// Wrap raw values, checking only positivity; used to feed
    /// [`check_invariants`] with hand-made (possibly broken) sequences.
    pub fn from_values(values: Vec<Int>, name: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::PreconditionViolated("empty sequence".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::PreconditionViolated(format!(
                "x_{i} = {} is not positive",
                values[i]
            )));
        }
        Ok(Self { values, name: name.into() })
    }

    /// Largest index `N` (the prefix holds `N + 1` values).
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn x(&self, n: usize) -> &Int {
        &self.values[n]
    }

    pub fn values(&self) -> &[Int] {
        &self.values
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl Serialize for SequencePrefix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SequencePrefix", 2)?;
        st.serialize_field("name", &self.name)?;
        let values: Vec<String> = self.values.iter().map(Int::to_string).collect();
        st.serialize_field("values", &values)?;
        st.end()
    }
}

/// Generate `x_0..x_last` from the recurrence, erroring out cleanly once a
/// term would exceed `budget_bits`.
///
/// Divisibility of each step is re-checked via [`exact_div`]; a
/// [`Error::NonDivisible`] here means the supplied family violates the
/// construction (it cannot happen for valid inputs).
pub fn generate(rec: &PolyRecurrence, last: usize, budget_bits: u64) -> Result<SequencePrefix> {
    let mut values = vec![Int::one(), rec.x1().clone()];
    if rec.x1().bits() > budget_bits {
        return Err(Error::BudgetExceeded { index: 1, bits: rec.x1().bits(), budget: budget_bits });
    }
    for n in 0..last.saturating_sub(1) {
        let f = rec.f_at(n)?;
        let fv = f.eval(&values[n], &values[n + 1]);
        let numerator = &values[n + 1] * &values[n + 1] * (fv + Int::one());
        let next = exact_div(&numerator, &values[n])?;
        if next.bits() > budget_bits {
            return Err(Error::BudgetExceeded { index: n + 2, bits: next.bits(), budget: budget_bits });
        }
        values.push(next);
    }
    values.truncate(last + 1);
    SequencePrefix::from_values(values, rec.name())
}

/// The A001697 values via the independent partial-sum identity
/// `x_{n+1} = x_n (x_0 + ... + x_n)`.
pub fn a001697(last: usize, budget_bits: u64) -> Result<SequencePrefix> {
    let mut values = vec![Int::one()];
    let mut partial = Int::one();
    while values.len() <= last {
        let next = values.last().unwrap() * &partial;
        if next.bits() > budget_bits {
            return Err(Error::BudgetExceeded {
                index: values.len(),
                bits: next.bits(),
                budget: budget_bits,
            });
        }
        partial += &next;
        values.push(next);
    }
    SequencePrefix::from_values(values, "a001697")
}

/// Outcome of one invariant at one index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub invariant: &'static str,
    pub index: usize,
    pub ok: bool,
    pub detail: String,
}

/// Structured pass/fail report for a sequence prefix: never errors, every
/// violation becomes a failed entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

/// Verify the divisibility chain, the quadratic growth bound, the
/// doubly-exponential minimum, and the ratio closure
/// `x_{n+2} x_n / x_{n+1}^2 = F_n + 1` on a prefix.
pub fn check_invariants(seq: &SequencePrefix, rec: &PolyRecurrence) -> InvariantReport {
    let mut checks = Vec::new();
    let last = seq.last_index();

    for n in 0..last {
        let ok = (seq.x(n + 1) % seq.x(n)).is_zero();
        checks.push(InvariantCheck {
            invariant: "divides_next",
            index: n,
            ok,
            detail: format!("x_{n} | x_{}", n + 1),
        });
    }

    for n in 0..last {
        match rec.f_at(n) {
            Ok(f) => {
                let fv = f.eval(seq.x(n), seq.x(n + 1));
                let ok = (&fv % seq.x(n)).is_zero();
                checks.push(InvariantCheck {
                    invariant: "divides_f",
                    index: n,
                    ok,
                    detail: format!("x_{n} | F_{n}(x_{n}, x_{}) = {fv}", n + 1),
                });
            }
            // F_n past the end of a per-index family is a failure only if
            // this prefix could not have been generated without it
            Err(e) if n + 2 <= last => checks.push(InvariantCheck {
                invariant: "divides_f",
                index: n,
                ok: false,
                detail: format!("F_{n} unavailable: {e}"),
            }),
            Err(_) => {}
        }
    }

    for n in 0..last.saturating_sub(1) {
        let ok = *seq.x(n + 2) > seq.x(n + 1) * seq.x(n + 1);
        checks.push(InvariantCheck {
            invariant: "quadratic_growth",
            index: n,
            ok,
            detail: format!("x_{} > x_{}^2", n + 2, n + 1),
        });
    }

    for n in 2..=last {
        // x_n >= 2^(2^(n-2))  <=>  bit length of x_n >= 2^(n-2) + 1
        let needed = 1u64 << (n - 2).min(62);
        let ok = seq.x(n).bits() > needed;
        checks.push(InvariantCheck {
            invariant: "min_bound",
            index: n,
            ok,
            detail: format!("x_{n} >= 2^(2^{})", n - 2),
        });
    }

    for n in 0..last.saturating_sub(1) {
        if let Ok(f) = rec.f_at(n) {
            let lhs = seq.x(n + 2) * seq.x(n);
            let rhs = seq.x(n + 1) * seq.x(n + 1) * (f.eval(seq.x(n), seq.x(n + 1)) + Int::one());
            checks.push(InvariantCheck {
                invariant: "ratio_closure",
                index: n,
                ok: lhs == rhs,
                detail: format!("x_{} x_{n} = x_{}^2 (F_{n} + 1)", n + 2, n + 1),
            });
        }
    }

    InvariantReport { checks }
}
