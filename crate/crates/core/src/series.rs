//! Continued-fraction expansions of the series
//! `S = sum_{n>=0} h^n / x_{n+1}` and `T = sum_{n>=0} (-1)^n h^n / x_{n+1}`
//! over a quadratic-recurrence sequence `(x_n)`.
//!
//! Everything here is a finite truncation with an exact matching identity:
//! the depth-`2m` convergent of [`expand_s`] equals the `m`-term partial sum
//! of `S`, and the depth-`(3m-4)` convergent of [`expand_t`] equals the
//! `m`-term partial sum of `T`. Those equalities pin down every index
//! convention, so the tests never rely on "close enough".
//!
//! When `x_1 <= h`, `S` itself has no all-integer expansion of this shape,
//! but `1/S` does: write `S = t/x_N + h^N S'` for the minimal `N` with
//! `x_{N+1} > h` (the head `t/x_N` is exact, `t` an integer by the
//! divisibility chain) and expand the shifted tail. One junction term of
//! the raw shifted expansion is a non-integer when `x_N > 1`; a value
//! preserving equivalence rescale by `x_N` at that position restores
//! integrality, so [`expand_inv_s_shifted`] emits positive integers
//! throughout (the `N = 0` boundary gets a formal `b_1 = t = 0` head,
//! which callers are expected to surface).
//!
//! For the family `F = X` the alternating expansion has vanishing interior
//! denominators `b_{3k} = 0`; [`expand_t_contracted`] collapses them with
//! the concatenation formula into the short form
//! `1/x_1 + h x_1/(x_2/x_1 - h) + h/1 + x_1/1 + h/(x_2-h+1) + ... + h/(x_{n-1}-h)`.
//! With `x_1 = h = 1` the two shapes [`nouv1`] and [`nouv2`] become regular
//! continued fractions over the A001697 sequence.

use num_traits::{One, Signed, Zero};

use crate::arith::{exact_div, is_positive_integer, Int, Rat};
use crate::cf::{CfTerm, GeneralizedCF, RegularCF};
use crate::error::{Error, Result};
use crate::sequence::{a001697, generate, PolyRecurrence, SequencePrefix, DEFAULT_BIT_BUDGET};

/// Which of the two series an expansion request refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Plain series `sum h^n / x_{n+1}`.
    S,
    /// Alternating series `sum (-1)^n h^n / x_{n+1}`.
    T,
}

/// An expansion request: the recurrence, the ratio base `h >= 1`, the
/// series kind, and how many series terms the truncation must cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    rec: PolyRecurrence,
    h: Int,
    kind: SeriesKind,
    truncation: usize,
    budget_bits: u64,
}

impl SeriesSpec {
    pub fn new(rec: PolyRecurrence, h: Int, kind: SeriesKind, truncation: usize) -> Result<Self> {
        if !h.is_positive() {
            return Err(Error::PreconditionViolated(format!("h must be >= 1, got {h}")));
        }
        let min = match kind {
            SeriesKind::S => 1,
            SeriesKind::T => 2,
        };
        if truncation < min {
            return Err(Error::PreconditionViolated(format!(
                "truncation must be >= {min} for this series, got {truncation}"
            )));
        }
        Ok(Self { rec, h, kind, truncation, budget_bits: DEFAULT_BIT_BUDGET })
    }

    /// Override the integer bit budget used while generating the sequence.
    pub fn with_budget_bits(mut self, budget_bits: u64) -> Self {
        self.budget_bits = budget_bits;
        self
    }

    pub fn rec(&self) -> &PolyRecurrence {
        &self.rec
    }

    pub fn h(&self) -> &Int {
        &self.h
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn budget_bits(&self) -> u64 {
        self.budget_bits
    }

    fn require_kind(&self, kind: SeriesKind, op: &str) -> Result<()> {
        if self.kind != kind {
            return Err(Error::PreconditionViolated(format!(
                "{op} applies to the {kind:?} series, spec says {:?}",
                self.kind
            )));
        }
        Ok(())
    }
}

/// The head data of a shifted reciprocal expansion: `S = t/x_N + h^N S'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftData {
    shift: usize,
    t: Int,
}

impl ShiftData {
    /// The shift index `N` (minimal with `x_{N+1} > h`).
    pub fn shift(&self) -> usize {
        self.shift
    }

    /// The integer head numerator `t = x_N sum_{n<N} h^n / x_{n+1}`.
    pub fn t(&self) -> &Int {
        &self.t
    }

    /// True for the `N = 0` boundary, where `t = 0` makes the leading
    /// partial denominator formally zero.
    pub fn is_degenerate(&self) -> bool {
        self.shift == 0
    }
}

/// Exact partial sum `sum_{k=1}^{m} h^{k-1} / x_k`.
pub fn partial_sum_s(seq: &SequencePrefix, h: &Int, m: usize) -> Rat {
    let mut acc = Rat::zero();
    for k in 1..=m {
        acc += Rat::new(h.pow((k - 1) as u32), seq.x(k).clone());
    }
    acc
}

/// Exact partial sum `sum_{k=1}^{m} (-1)^(k-1) h^{k-1} / x_k`.
pub fn partial_sum_t(seq: &SequencePrefix, h: &Int, m: usize) -> Rat {
    let mut acc = Rat::zero();
    for k in 1..=m {
        let term = Rat::new(h.pow((k - 1) as u32), seq.x(k).clone());
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn check_positive_integer_terms(terms: &[CfTerm], skip_b1: bool) -> Result<()> {
    for (i, t) in terms.iter().enumerate() {
        let k = i + 1;
        if !is_positive_integer(&t.a) {
            return Err(Error::PreconditionViolated(format!(
                "emitted a_{k} = {} is not a positive integer",
                t.a
            )));
        }
        if k == 1 && skip_b1 {
            continue;
        }
        if !is_positive_integer(&t.b) {
            return Err(Error::PreconditionViolated(format!(
                "emitted b_{k} = {} is not a positive integer",
                t.b
            )));
        }
    }
    Ok(())
}

/// Expansion of the plain series: `2n` terms with
/// `a_1 = 1, b_1 = x_1 - h`, `a_2k = h, b_2k = x_{k-1}`,
/// `a_{2k+1} = 1, b_{2k+1} = F_{k-1}(x_{k-1}, x_k) / x_{k-1}`.
///
/// Needs `x_1 > h`; every emitted term is a positive integer, and the
/// depth-`2m` convergent equals the `m`-term partial sum for every `m <= n`.
pub fn expand_s(spec: &SeriesSpec) -> Result<GeneralizedCF> {
    spec.require_kind(SeriesKind::S, "expand_s")?;
    let n = spec.truncation();
    let seq = generate(spec.rec(), n.max(2) - 1, spec.budget_bits())?;
    let h = Rat::from_integer(spec.h().clone());
    if seq.x(1) <= spec.h() {
        return Err(Error::PreconditionViolated(format!(
            "x_1 = {} must exceed h = {}; expand 1/S with the shifted form instead",
            seq.x(1),
            spec.h()
        )));
    }
    let mut terms = vec![CfTerm::new(Rat::one(), Rat::from_integer(seq.x(1) - spec.h()))];
    for idx in 2..=2 * n {
        let k = idx / 2;
        let term = if idx % 2 == 0 {
            CfTerm::new(h.clone(), Rat::from_integer(seq.x(k - 1).clone()))
        } else {
            let f = spec.rec().f_at(k - 1)?.eval(seq.x(k - 1), seq.x(k));
            CfTerm::new(Rat::one(), Rat::from_integer(exact_div(&f, seq.x(k - 1))?))
        };
        terms.push(term);
    }
    check_positive_integer_terms(&terms, false)?;
    GeneralizedCF::new(terms)
}

/// Shifted reciprocal expansion: returns the head data `(N, t)` and a
/// `2n + 1`-term fraction whose depth-`(2m+1)` convergent is exactly
/// `1 / (t/x_N + h^N sum_{k=1}^{m} h^{k-1}/x_{N+k})` for every `m <= n`.
///
/// All terms are positive integers except in the `N = 0` boundary case,
/// where the head is the formal `x_0 / 0` (see [`ShiftData::is_degenerate`]).
pub fn expand_inv_s_shifted(spec: &SeriesSpec) -> Result<(ShiftData, GeneralizedCF)> {
    spec.require_kind(SeriesKind::S, "expand_inv_s_shifted")?;
    let n = spec.truncation();
    let h = spec.h();

    // locate the minimal N with x_{N+1} > h; the budget bounds the search
    let mut last = 4;
    let shift = loop {
        let seq = match generate(spec.rec(), last, spec.budget_bits()) {
            Ok(seq) => seq,
            Err(Error::BudgetExceeded { budget, .. }) => {
                return Err(Error::PrefixTooShort(format!(
                    "no x_{{N+1}} > h = {h} within the {budget}-bit budget"
                )));
            }
            Err(e) => return Err(e),
        };
        match (0..seq.last_index()).find(|&i| seq.x(i + 1) > h) {
            Some(shift) => break shift,
            None => last *= 2,
        }
    };
    let seq = generate(spec.rec(), shift + n.max(2), spec.budget_bits())?;

    // t = x_N (h^0/x_1 + ... + h^(N-1)/x_N), an integer by the divisibility chain
    let mut t = Int::zero();
    for k in 1..=shift {
        t += h.pow((k - 1) as u32) * exact_div(seq.x(shift), seq.x(k))?;
    }

    let x_shift = Rat::from_integer(seq.x(shift).clone());
    let h_rat = Rat::from_integer(h.clone());
    let mut terms = Vec::with_capacity(2 * n + 1);
    // head x_N / t, then the shifted-tail terms with a_1' folded in
    terms.push(CfTerm::new(x_shift.clone(), Rat::from_integer(t.clone())));
    terms.push(CfTerm::new(
        Rat::from_integer(h.pow(shift as u32)) * &x_shift,
        Rat::from_integer(seq.x(shift + 1) - h),
    ));
    for idx in 2..=2 * n {
        // idx-th term of the shifted tail, rescaled at the junction so the
        // x_N denominators cancel
        let k = idx / 2;
        let term = if idx == 2 {
            CfTerm::new(h_rat.clone(), Rat::one())
        } else if idx == 3 {
            let f = spec.rec().f_at(shift)?.eval(seq.x(shift), seq.x(shift + 1));
            CfTerm::new(
                x_shift.clone(),
                Rat::from_integer(f + Int::one() - seq.x(shift)),
            )
        } else if idx % 2 == 0 {
            let a = if idx == 4 { &h_rat * &x_shift } else { h_rat.clone() };
            CfTerm::new(a, Rat::from_integer(seq.x(shift + k - 1).clone()))
        } else {
            let f = spec
                .rec()
                .f_at(shift + k - 1)?
                .eval(seq.x(shift + k - 1), seq.x(shift + k));
            CfTerm::new(
                Rat::one(),
                Rat::from_integer(exact_div(&f, seq.x(shift + k - 1))?),
            )
        };
        terms.push(term);
    }
    check_positive_integer_terms(&terms, shift == 0)?;
    let cf = GeneralizedCF::new(terms)?;
    Ok((ShiftData { shift, t }, cf))
}

/// Expansion of the alternating series: `3n - 4` terms following the
/// three-periodic pattern
/// `a_{3k-1} = h^k, b_{3k-1} = h^{k-1}(x_k - h)`,
/// `a_3k = h^{k-1}, b_3k = F_k(x_k, x_{k+1})/x_k - 1`,
/// `a_{3k+1} = b_{3k+1} = 1`, with the four leading terms
/// `(1, x_1), (h x_1, x_2/x_1 - h), (h, F_1+1-x_1), (x_1, 1)`.
///
/// Needs `x_1 >= h`. A vanishing `b_3k` (the `F = X` family) is reported so
/// callers can switch to [`expand_t_contracted`]; every other term is
/// verified to be a positive integer.
pub fn expand_t(spec: &SeriesSpec) -> Result<GeneralizedCF> {
    spec.require_kind(SeriesKind::T, "expand_t")?;
    let n = spec.truncation();
    let seq = generate(spec.rec(), (n - 1).max(2), spec.budget_bits())?;
    let h = spec.h();
    if seq.x(1) < h {
        return Err(Error::PreconditionViolated(format!(
            "x_1 = {} must be >= h = {}",
            seq.x(1),
            h
        )));
    }
    let h_rat = Rat::from_integer(h.clone());
    let len = 3 * n - 4;
    let mut terms = Vec::with_capacity(len);
    for idx in 1..=len {
        let term = match idx {
            1 => CfTerm::new(Rat::one(), Rat::from_integer(seq.x(1).clone())),
            2 => CfTerm::new(
                &h_rat * Rat::from_integer(seq.x(1).clone()),
                Rat::from_integer(exact_div(seq.x(2), seq.x(1))? - h),
            ),
            3 => {
                let f = spec.rec().f_at(1)?.eval(seq.x(1), seq.x(2));
                CfTerm::new(h_rat.clone(), Rat::from_integer(f + Int::one() - seq.x(1)))
            }
            4 => CfTerm::new(Rat::from_integer(seq.x(1).clone()), Rat::one()),
            _ => {
                let k = (idx + 1) / 3;
                if idx == 3 * k - 1 {
                    CfTerm::new(
                        Rat::from_integer(h.pow(k as u32)),
                        Rat::from_integer(h.pow((k - 1) as u32) * (seq.x(k) - h)),
                    )
                } else if idx == 3 * k {
                    let f = spec.rec().f_at(k)?.eval(seq.x(k), seq.x(k + 1));
                    let b = exact_div(&f, seq.x(k))? - Int::one();
                    if b.is_zero() {
                        return Err(Error::PreconditionViolated(format!(
                            "b_{idx} = 0 (F_{k} acts as X here); use the contracted expansion"
                        )));
                    }
                    CfTerm::new(Rat::from_integer(h.pow((k - 1) as u32)), Rat::from_integer(b))
                } else {
                    CfTerm::new(Rat::one(), Rat::one())
                }
            }
        };
        terms.push(term);
    }
    check_positive_integer_terms(&terms, false)?;
    GeneralizedCF::new(terms)
}

/// True when the alternating expansion of this spec needs the contracted
/// form (some interior `b_3k` would vanish).
pub fn t_needs_contraction(spec: &SeriesSpec) -> bool {
    matches!(
        expand_t(spec),
        Err(Error::PreconditionViolated(ref msg)) if msg.contains("contracted")
    )
}

/// Contracted alternating expansion for the `F = X` family (`n >= 3`):
/// `n + 2` terms
/// `(1, x_1), (h x_1, x_2/x_1 - h), (h, 1), (x_1, 1),
///  (h, x_2-h+1), ..., (h, x_{n-2}-h+1), (h, x_{n-1}-h)`.
///
/// Evaluates to the same `n`-term partial sum as the formal uncontracted
/// shape with its zero denominators.
pub fn expand_t_contracted(spec: &SeriesSpec) -> Result<GeneralizedCF> {
    spec.require_kind(SeriesKind::T, "expand_t_contracted")?;
    if !spec.rec().is_identity_x_family() {
        return Err(Error::PreconditionViolated(
            "the contracted expansion is the F = X special case".into(),
        ));
    }
    let n = spec.truncation();
    if n < 3 {
        return Err(Error::PreconditionViolated(format!(
            "contracted expansion needs truncation >= 3, got {n}"
        )));
    }
    let seq = generate(spec.rec(), n - 1, spec.budget_bits())?;
    let h = spec.h();
    if seq.x(1) < h {
        return Err(Error::PreconditionViolated(format!(
            "x_1 = {} must be >= h = {}",
            seq.x(1),
            h
        )));
    }
    let h_rat = Rat::from_integer(h.clone());
    let mut terms = vec![
        CfTerm::new(Rat::one(), Rat::from_integer(seq.x(1).clone())),
        CfTerm::new(
            &h_rat * Rat::from_integer(seq.x(1).clone()),
            Rat::from_integer(exact_div(seq.x(2), seq.x(1))? - h),
        ),
        CfTerm::new(h_rat.clone(), Rat::one()),
        CfTerm::new(Rat::from_integer(seq.x(1).clone()), Rat::one()),
    ];
    for k in 2..n - 1 {
        terms.push(CfTerm::new(
            h_rat.clone(),
            Rat::from_integer(seq.x(k) - h + Int::one()),
        ));
    }
    terms.push(CfTerm::new(
        h_rat.clone(),
        Rat::from_integer(seq.x(n - 1) - h),
    ));
    check_positive_integer_terms(&terms, false)?;
    GeneralizedCF::new(terms)
}

/// The regular expansion `[1; 1, x_1, 1, x_2, ...]` over the A001697
/// sequence, truncated so that its value is exactly
/// `sum_{k=1}^{N} 1/x_k` (`N >= 1`).
pub fn nouv1(n: usize, budget_bits: u64) -> Result<RegularCF> {
    if n < 1 {
        return Err(Error::PreconditionViolated("nouv1 needs N >= 1".into()));
    }
    let seq = a001697(n.max(2) - 1, budget_bits)?;
    let mut quotients = Vec::with_capacity(2 * (n - 1));
    for k in 1..n {
        quotients.push(Int::one());
        quotients.push(seq.x(k).clone());
    }
    RegularCF::new(Int::one(), quotients)
}

/// The regular expansion `[0; 1, 1, 1, x_1, x_2, ...]` over the A001697
/// sequence, truncated (with the final quotient lowered by one) so that its
/// value is exactly `sum_{k=1}^{N} (-1)^(k-1)/x_k` (`N >= 3`).
pub fn nouv2(n: usize, budget_bits: u64) -> Result<RegularCF> {
    if n < 3 {
        return Err(Error::PreconditionViolated("nouv2 needs N >= 3".into()));
    }
    let seq = a001697(n - 1, budget_bits)?;
    let mut quotients = vec![Int::one(), Int::one(), Int::one()];
    for k in 1..=n - 2 {
        quotients.push(seq.x(k).clone());
    }
    quotients.push(seq.x(n - 1) - Int::one());
    RegularCF::new(Int::zero(), quotients)
}
