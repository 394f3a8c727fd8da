//! Transformations between finite sums and generalized continued fractions.
//!
//! Given nonzero rationals `x_1..x_n`, `y_1..y_n` (with `x_0 = y_0 = 1` by
//! convention), the two sums
//!
//! ```text
//! sigma_n = sum_{k=1}^{n} y_k / x_k
//! tau_n   = sum_{k=1}^{n} (-1)^(k-1) y_k / x_k
//! ```
//!
//! admit closed-form continued fractions built from the term-ratio operator
//! `theta u_k = u_{k+1} / u_k` and its iterate
//! `theta^2 u_k = u_{k+2} u_k / u_{k+1}^2`:
//!
//! * [`euler_cf`] — the classical Euler shape, `n` terms, value `tau_n`;
//! * [`hone_cf`] — a Hone-type shape, `2n` terms, value `sigma_n`;
//! * [`varona_cf`] and its auxiliary variant [`varona_aux_cf`] — Varona-type
//!   shapes, `3n - 4` terms, value `tau_n`.
//!
//! The inverse direction ([`cf_to_sum_euler`], [`cf_to_sum_hone`],
//! [`cf_to_sum_varona`]) expands any continued fraction back into a finite
//! sum over its convergent denominators. [`sum_sigma`] and [`sum_tau`] are
//! the plain-summation oracles every identity is tested against.

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{parse_rat, rat_to_string, Rat};
use crate::cf::{CfTerm, GeneralizedCF};
use crate::error::{Error, Result};

/// The inputs `x_1..x_n`, `y_1..y_n` of a finite sum, with the convention
/// `x_0 = y_0 = 1` stored internally so the theta operators can reach
/// index 0 without special cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSpec {
    x: Vec<Rat>,
    y: Vec<Rat>,
}

impl SumSpec {
    /// Build from the entries `x_1..x_n` and `y_1..y_n`. All entries must be
    /// nonzero and the two lists the same nonempty length.
    pub fn new(x: Vec<Rat>, y: Vec<Rat>) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::PreconditionViolated(format!(
                "need equal nonempty x and y lists, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        for (name, list) in [("x", &x), ("y", &y)] {
            if let Some(i) = list.iter().position(Rat::is_zero) {
                return Err(Error::PreconditionViolated(format!(
                    "{name}_{} must be nonzero",
                    i + 1
                )));
            }
        }
        let mut xs = Vec::with_capacity(x.len() + 1);
        xs.push(Rat::one());
        xs.extend(x);
        let mut ys = Vec::with_capacity(y.len() + 1);
        ys.push(Rat::one());
        ys.extend(y);
        Ok(Self { x: xs, y: ys })
    }

    /// Number of summands `n`.
    pub fn n(&self) -> usize {
        self.x.len() - 1
    }

    /// `x_k` for `0 <= k <= n` (`x_0 = 1`).
    pub fn x(&self, k: usize) -> &Rat {
        &self.x[k]
    }

    /// `y_k` for `0 <= k <= n` (`y_0 = 1`).
    pub fn y(&self, k: usize) -> &Rat {
        &self.y[k]
    }

    /// View of the `x` sequence for the theta operators.
    pub fn xs(&self) -> SeqView<'_> {
        SeqView { u: &self.x }
    }

    /// View of the `y` sequence for the theta operators.
    pub fn ys(&self) -> SeqView<'_> {
        SeqView { u: &self.y }
    }
}

// JSON form: {"x": ["2", "3"], "y": ["1", "1"]} over the entries 1..n
// (the conventional index-0 entries stay implicit).
impl Serialize for SumSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SumSpec", 2)?;
        let strings = |list: &[Rat]| list[1..].iter().map(rat_to_string).collect::<Vec<_>>();
        st.serialize_field("x", &strings(&self.x))?;
        st.serialize_field("y", &strings(&self.y))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SumSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            x: Vec<String>,
            y: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let parse = |list: &[String]| {
            list.iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<Rat>>>()
        };
        Self::new(
            parse(&raw.x).map_err(D::Error::custom)?,
            parse(&raw.y).map_err(D::Error::custom)?,
        )
        .map_err(D::Error::custom)
    }
}

/// A read-only view of a sequence `u_0 = 1, u_1, ..., u_n` supporting the
/// term-ratio operators.
#[derive(Debug, Clone, Copy)]
pub struct SeqView<'a> {
    u: &'a [Rat],
}

impl SeqView<'_> {
    /// Largest valid index `n`.
    pub fn n(&self) -> usize {
        self.u.len() - 1
    }

    pub fn get(&self, k: usize) -> &Rat {
        &self.u[k]
    }

    /// `theta u_k = u_{k+1} / u_k`, defined for `0 <= k <= n-1`.
    pub fn theta(&self, k: usize) -> Result<Rat> {
        if k + 1 > self.n() {
            return Err(Error::IndexOutOfRange { index: k, max: self.n() - 1 });
        }
        Ok(&self.u[k + 1] / &self.u[k])
    }

    /// `theta^2 u_k = u_{k+2} u_k / u_{k+1}^2`, defined for `0 <= k <= n-2`.
    pub fn theta2(&self, k: usize) -> Result<Rat> {
        if k + 2 > self.n() {
            return Err(Error::IndexOutOfRange { index: k, max: self.n().saturating_sub(2) });
        }
        Ok(&self.u[k + 2] * &self.u[k] / (&self.u[k + 1] * &self.u[k + 1]))
    }
}

/// Exact `sigma_n = sum y_k / x_k`. Oracle for [`hone_cf`].
pub fn sum_sigma(s: &SumSpec) -> Rat {
    (1..=s.n()).fold(Rat::zero(), |acc, k| acc + s.y(k) / s.x(k))
}

/// Exact `tau_n = sum (-1)^(k-1) y_k / x_k`. Oracle for [`euler_cf`] and
/// [`varona_cf`].
pub fn sum_tau(s: &SumSpec) -> Rat {
    (1..=s.n()).fold(Rat::zero(), |acc, k| {
        let term = s.y(k) / s.x(k);
        if k % 2 == 1 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Euler-shape fraction of length `n` evaluating to `tau_n`:
/// `a_1 = y_1`, `b_1 = x_1`, then
/// `a_k = theta y_{k-1} theta x_{k-2}`, `b_k = theta x_{k-1} - theta y_{k-1}`.
pub fn euler_cf(s: &SumSpec) -> GeneralizedCF {
    let (x, y) = (s.xs(), s.ys());
    let mut terms = vec![CfTerm::new(s.y(1).clone(), s.x(1).clone())];
    for k in 2..=s.n() {
        let ty = y.theta(k - 1).expect("k-1 <= n-1");
        let a = &ty * x.theta(k - 2).expect("k-2 <= n-1");
        let b = x.theta(k - 1).expect("k-1 <= n-1") - ty;
        terms.push(CfTerm::new(a, b));
    }
    GeneralizedCF::new(terms).expect("theta of nonzero entries is nonzero")
}

/// Hone-shape fraction of length `2n` evaluating to `sigma_n`:
/// `a_1 = y_1`, `b_1 = x_1 - y_1`, and for `k >= 1`
/// `a_2k = theta y_{k-1}`, `b_2k = x_{k-1}`,
/// `a_{2k+1} = theta^2 y_{k-1}`,
/// `b_{2k+1} = (theta^2 x_{k-1} - theta^2 y_{k-1}) / x_{k-1}`.
pub fn hone_cf(s: &SumSpec) -> GeneralizedCF {
    let (x, y) = (s.xs(), s.ys());
    let n = s.n();
    let mut terms = vec![CfTerm::new(s.y(1).clone(), s.x(1) - s.y(1))];
    for m in 2..=2 * n {
        let k = m / 2;
        let term = if m % 2 == 0 {
            CfTerm::new(y.theta(k - 1).expect("k <= n"), s.x(k - 1).clone())
        } else {
            let t2y = y.theta2(k - 1).expect("k+1 <= n");
            let b = (x.theta2(k - 1).expect("k+1 <= n") - &t2y) / s.x(k - 1);
            CfTerm::new(t2y, b)
        };
        terms.push(term);
    }
    GeneralizedCF::new(terms).expect("theta products of nonzero entries are nonzero")
}

/// Varona-shape fraction of length `3n - 4` (needs `n >= 2`) evaluating to
/// `tau_n`.
pub fn varona_cf(s: &SumSpec) -> Result<GeneralizedCF> {
    let n = s.n();
    if n < 2 {
        return Err(Error::PreconditionViolated("varona shape needs n >= 2".into()));
    }
    let (x, y) = (s.xs(), s.ys());
    let len = 3 * n - 4;
    let mut terms = Vec::with_capacity(len);
    for m in 1..=len {
        let term = match m {
            1 => CfTerm::new(s.y(1) * s.y(1), s.x(1) * s.y(1)),
            2 => CfTerm::new(s.x(1) * s.y(2), x.theta(1)? - y.theta(1)?),
            3 => CfTerm::new(y.theta(2)?, x.theta2(1)? - s.x(1)),
            4 => CfTerm::new(s.x(1).clone(), Rat::one()),
            _ => {
                let k = (m + 1) / 3;
                if m == 3 * k - 1 {
                    CfTerm::new(s.y(k + 1).clone(), s.x(k) * s.y(k) - s.y(k + 1))
                } else if m == 3 * k {
                    let t2y = y.theta2(k)?;
                    let b = (x.theta2(k)? - &t2y) / s.x(k) - Rat::one();
                    CfTerm::new(s.y(k) * t2y, b)
                } else {
                    CfTerm::new(Rat::one(), Rat::one())
                }
            }
        };
        terms.push(term);
    }
    GeneralizedCF::new(terms)
}

/// The auxiliary Varona shape: identical to [`varona_cf`] except at indices
/// 3 and 4, where `a_3 = theta y_2 / x_1`, `b_3 = theta x_2 / x_2 - 1` and
/// `a_4 = 1`. Rescaling index 3 by `x_1` recovers [`varona_cf`] term by
/// term; this is the variant whose convergent denominators take the closed
/// form asserted in the proof-identity tests.
pub fn varona_aux_cf(s: &SumSpec) -> Result<GeneralizedCF> {
    let n = s.n();
    if n < 2 {
        return Err(Error::PreconditionViolated("varona shape needs n >= 2".into()));
    }
    let (x, y) = (s.xs(), s.ys());
    let len = 3 * n - 4;
    let mut terms = Vec::with_capacity(len);
    for m in 1..=len {
        let term = match m {
            1 => CfTerm::new(s.y(1) * s.y(1), s.x(1) * s.y(1)),
            2 => CfTerm::new(s.x(1) * s.y(2), x.theta(1)? - y.theta(1)?),
            3 => CfTerm::new(y.theta(2)? / s.x(1), x.theta(2)? / s.x(2) - Rat::one()),
            _ => {
                let k = (m - 1) / 3;
                if m == 3 * k + 1 {
                    CfTerm::new(Rat::one(), Rat::one())
                } else if m == 3 * k + 2 {
                    CfTerm::new(s.y(k + 2).clone(), s.x(k + 1) * s.y(k + 1) - s.y(k + 2))
                } else {
                    let t2y = y.theta2(k + 1)?;
                    let b = (x.theta2(k + 1)? - &t2y) / s.x(k + 1) - Rat::one();
                    CfTerm::new(s.y(k + 1) * t2y, b)
                }
            }
        };
        terms.push(term);
    }
    GeneralizedCF::new(terms)
}

/// The scale vector mapping [`varona_aux_cf`] onto [`varona_cf`]: all ones
/// except `c_3 = x_1`.
pub fn varona_aux_scale(s: &SumSpec) -> Vec<Rat> {
    let len = 3 * s.n() - 4;
    let mut c = vec![Rat::one(); len];
    if len >= 3 {
        c[2] = s.x(1).clone();
    }
    c
}

fn require_nonzero_q(table: &crate::cf::ConvergentTable, k: usize) -> Result<()> {
    if table.q(k).is_zero() {
        Err(Error::ZeroDenominatorConvergent { index: k })
    } else {
        Ok(())
    }
}

/// Expand a fraction into the alternating sum
/// `term_k = (-1)^k a_1...a_{k+1} / (Q_{k+1} Q_k)` for `0 <= k < n`.
/// The terms add up to the depth-`n` value exactly.
pub fn cf_to_sum_euler(cf: &GeneralizedCF, n: usize) -> Result<Vec<Rat>> {
    let table = cf.convergents(n)?;
    for k in 0..=n {
        require_nonzero_q(&table, k)?;
    }
    let mut out = Vec::with_capacity(n);
    let mut product = Rat::one();
    for k in 0..n {
        product *= &cf.term(k + 1).a;
        let term = &product / (table.q(k + 1) * table.q(k));
        out.push(if k % 2 == 0 { term } else { -term });
    }
    Ok(out)
}

/// Expand an even-depth fraction into `n` pair terms
/// `a_1...a_{2k+1} b_{2k+2} / (Q_{2k} Q_{2k+2})` for `0 <= k < n`.
/// The terms add up to the depth-`2n` value exactly.
pub fn cf_to_sum_hone(cf: &GeneralizedCF, n: usize) -> Result<Vec<Rat>> {
    if cf.len() < 2 * n {
        return Err(Error::IndexOutOfRange { index: 2 * n, max: cf.len() });
    }
    let table = cf.convergents(2 * n)?;
    for k in 0..=n {
        require_nonzero_q(&table, 2 * k)?;
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let product = cf.numerator_product(2 * k + 1);
        out.push(product * &cf.term(2 * k + 2).b / (table.q(2 * k) * table.q(2 * k + 2)));
    }
    Ok(out)
}

/// Expand a depth-`3n - 1` fraction into the block sum
/// `a_1/Q_1 - a_1 a_2/(Q_1 Q_2)` followed by `n - 1` terms
/// `(-1)^(k-1) a_1...a_3k (b_{3k+1} b_{3k+2} + a_{3k+2}) / (Q_{3k-1} Q_{3k+2})`.
/// The terms add up to the depth-`(3n-1)` value exactly.
pub fn cf_to_sum_varona(cf: &GeneralizedCF, n: usize) -> Result<Vec<Rat>> {
    if n < 1 {
        return Err(Error::PreconditionViolated("block count must be >= 1".into()));
    }
    let depth = 3 * n - 1;
    if cf.len() < depth {
        return Err(Error::IndexOutOfRange { index: depth, max: cf.len() });
    }
    let table = cf.convergents(depth)?;
    require_nonzero_q(&table, 1)?;
    require_nonzero_q(&table, 2)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(&cf.term(1).a / table.q(1));
    out.push(-(cf.numerator_product(2) / (table.q(1) * table.q(2))));
    for k in 1..n {
        require_nonzero_q(&table, 3 * k - 1)?;
        require_nonzero_q(&table, 3 * k + 2)?;
        let product = cf.numerator_product(3 * k);
        let weight = &cf.term(3 * k + 1).b * &cf.term(3 * k + 2).b + &cf.term(3 * k + 2).a;
        let term = product * weight / (table.q(3 * k - 1) * table.q(3 * k + 2));
        out.push(if k % 2 == 1 { term } else { -term });
    }
    Ok(out)
}
