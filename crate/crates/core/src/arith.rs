//! Exact integer and rational arithmetic.
//!
//! Everything downstream works over [`Int`] (arbitrary-precision signed
//! integers) and [`Rat`] (arbitrary-precision rationals, always stored in
//! lowest terms with a positive denominator). No floating point anywhere.
//!
//! The usual field operations come from the `num` operator impls; this
//! module adds the checked divisions the rest of the crate relies on and
//! the `"p/q"` string forms used by every JSON interface.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, normalized to lowest terms on construction
/// with the sign carried by the numerator.
pub type Rat = BigRational;

/// Shorthand for building a small rational.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

/// Shorthand for building a small integer-valued rational.
pub fn rat_int(value: i64) -> Rat {
    Rat::from_integer(Int::from(value))
}

/// Checked rational division: `a / b`, erroring on `b = 0` rather than
/// panicking like the `/` operator does.
pub fn rat_div(a: &Rat, b: &Rat) -> Result<Rat> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Exact integer division: `a / b` when `b` divides `a`.
///
/// A non-divisible pair is reported as [`Error::NonDivisible`]; this is how
/// violated divisibility preconditions surface everywhere in the crate.
pub fn exact_div(a: &Int, b: &Int) -> Result<Int> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::NonDivisible {
            numerator: a.to_string(),
            divisor: b.to_string(),
        });
    }
    Ok(q)
}

/// True if `q` has denominator 1.
pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

/// True if `q` is a positive integer.
pub fn is_positive_integer(q: &Rat) -> bool {
    is_integer(q) && q.numer().is_positive()
}

/// Parse an exact number written as `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Parse an exact integer in decimal.
pub fn parse_int(s: &str) -> Result<Int> {
    let s = s.trim();
    Int::from_str(s).map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

/// Decimal string form used in JSON output: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(q: &Rat) -> String {
    q.to_string()
}
