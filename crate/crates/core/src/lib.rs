//! Exact-arithmetic toolkit for generalized continued fractions.
//!
//! The crate turns finite sums `sum y_k/x_k` (plain and alternating) into
//! generalized continued fractions and back, generates the integer
//! sequences defined by the quadratic recurrence
//! `x_{n+2} x_n = x_{n+1}^2 (F_n(x_n, x_{n+1}) + 1)`, and builds the
//! continued-fraction expansions of the series `S = sum h^n / x_{n+1}` and
//! its alternating companion `T` — all over arbitrary-precision rationals,
//! with every identity checkable as exact structural equality.
//!
//! Modules:
//!
//! * [`arith`] — big integers, big rationals, checked exact division;
//! * [`poly`] — sparse bivariate polynomials with non-negative coefficients;
//! * [`cf`] — generalized and regular continued fractions, convergents,
//!   equivalence scaling, and zero-denominator contraction;
//! * [`transform`] — the sum-to-fraction shapes (Euler, Hone, Varona) and
//!   the fraction-to-sum inverses;
//! * [`sequence`] — quadratic-recurrence integer sequences and their
//!   divisibility/growth invariants;
//! * [`series`] — S/T expansions, the shifted reciprocal expansion, and the
//!   closed-form regular expansions over the A001697 preset;
//! * [`verify`] — seeded randomized identity suites shared by the CLI and
//!   the test batteries.
//!
//! ```
//! use cfx_core::{euler_cf, sum_tau, SumSpec};
//! use cfx_core::arith::{rat, rat_int};
//!
//! // 1/2 - 1/3 as a two-term continued fraction
//! let spec = SumSpec::new(
//!     vec![rat_int(2), rat_int(3)],
//!     vec![rat_int(1), rat_int(1)],
//! )?;
//! let cf = euler_cf(&spec);
//! assert_eq!(cf.value()?, rat(1, 6));
//! assert_eq!(cf.value()?, sum_tau(&spec));
//! # Ok::<(), cfx_core::Error>(())
//! ```

pub mod arith;
pub mod cf;
pub mod error;
pub mod poly;
pub mod sequence;
pub mod series;
pub mod transform;
pub mod verify;

pub use arith::{exact_div, is_integer, is_positive_integer, parse_int, parse_rat, rat_div, Int, Rat};
pub use cf::{CfTerm, ConvergentTable, GeneralizedCF, RegularCF};
pub use error::{Error, Result};
pub use poly::BivarPoly;
pub use sequence::{InvariantReport, PolyRecurrence, SequencePrefix, DEFAULT_BIT_BUDGET};
pub use series::{SeriesKind, SeriesSpec, ShiftData};
pub use transform::{
    cf_to_sum_euler, cf_to_sum_hone, cf_to_sum_varona, euler_cf, hone_cf, sum_sigma, sum_tau,
    varona_aux_cf, varona_aux_scale, varona_cf, SumSpec,
};
