//! Crate-wide error type.

use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// All arithmetic in this crate is exact, so errors are structural
/// (a violated precondition or a genuinely undefined value), never
/// numerical. Indices reported in errors are 1-based, matching the
/// subscripts used throughout the public API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,

    /// `exact_div(a, b)` was called with `b` not dividing `a`.
    #[error("{numerator} is not divisible by {divisor}")]
    NonDivisible { numerator: String, divisor: String },

    /// A partial numerator of zero would silently truncate the fraction.
    #[error("partial numerator a_{index} is zero")]
    ZeroPartialNumerator { index: usize },

    /// The requested convergent P_m/Q_m has Q_m = 0 (formally infinite).
    #[error("convergent at index {index} has zero denominator Q_{index}")]
    ZeroDenominatorConvergent { index: usize },

    /// An equivalence-scale factor of zero is not value preserving.
    #[error("scale factor c_{index} is zero")]
    ZeroScaleFactor { index: usize },

    /// Contraction was requested at an index whose partial denominator is nonzero.
    #[error("partial denominator b_{index} is nonzero; contraction needs b_{index} = 0")]
    NonzeroPartialDenominator { index: usize },

    /// The continued fraction is not regular at the given term.
    #[error("not a regular continued fraction at index {index}: {reason}")]
    NotRegular { index: usize, reason: String },

    /// An index was outside the valid 1-based (or 0-based, for sequences) range.
    #[error("index {index} out of range ({max} allowed)")]
    IndexOutOfRange { index: usize, max: usize },

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// An integer outgrew the configured bit budget.
    #[error("value at index {index} needs {bits} bits, over the {budget}-bit budget")]
    BudgetExceeded { index: usize, bits: u64, budget: u64 },

    /// No sequence entry within the budget satisfies the shift condition.
    #[error("generated prefix too short: {0}")]
    PrefixTooShort(String),

    /// A polynomial violated a structural invariant.
    #[error("invalid polynomial: {0}")]
    InvalidPoly(String),

    /// A number, polynomial, or JSON document failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
