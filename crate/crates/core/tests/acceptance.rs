//! Acceptance battery: every release criterion as one test, each printing a
//! single pass/fail line. All value comparisons are exact rational
//! equality, zero tolerance. Run with `--nocapture` to see the lines:
//!
//! ```text
//! cargo test -p cfx-core --test acceptance -- --nocapture
//! ```

use std::time::Instant;

use cfx_core::arith::{rat, rat_int, Int, Rat};
use cfx_core::cf::{CfTerm, GeneralizedCF};
use cfx_core::poly::BivarPoly;
use cfx_core::sequence::{a001697, check_invariants, generate, PolyRecurrence, DEFAULT_BIT_BUDGET};
use cfx_core::series::{
    expand_inv_s_shifted, expand_s, expand_t, expand_t_contracted, nouv1, nouv2, partial_sum_s,
    partial_sum_t, SeriesKind, SeriesSpec,
};
use cfx_core::verify::{run_suite, Suite};
use num_traits::{One, Zero};

const SEED: u64 = 20260810;

fn conclude(label: &str, ok: bool) {
    println!("criterion {label}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {label} failed");
}

#[test]
fn criterion_1_sum_to_fraction_identities() {
    let start = Instant::now();
    let euler = run_suite(Suite::Euler, 1000, SEED);
    let hone = run_suite(Suite::Hone, 1000, SEED);
    let varona = run_suite(Suite::Varona, 1000, SEED);
    let elapsed = start.elapsed();
    let ok = euler.ok() && hone.ok() && varona.ok() && elapsed.as_secs_f64() < 10.0;
    println!(
        "  shape suites: euler {}/{}, hone {}/{}, varona {}/{} in {:.2}s",
        euler.passed, euler.trials, hone.passed, hone.trials, varona.passed, varona.trials,
        elapsed.as_secs_f64()
    );
    for report in [&euler, &hone, &varona] {
        for note in &report.notes {
            println!("  note[{}]: {note}", report.suite);
        }
    }
    conclude("1 (sum-to-fraction identities, 1000 trials each)", ok);
}

#[test]
fn criterion_2_inverse_lemmas() {
    let lemmas = run_suite(Suite::Lemmas, 1000, SEED);
    for note in &lemmas.notes {
        println!("  note: {note}");
    }
    conclude("2 (fraction-to-sum expansions, 1000 trials)", lemmas.ok());
}

#[test]
fn criterion_3_proof_identities() {
    let proofs = run_suite(Suite::Proofs, 200, SEED);
    for note in &proofs.notes {
        println!("  note: {note}");
    }
    conclude("3 (convergent closed forms and products, 200 trials)", proofs.ok());
}

#[test]
fn criterion_4_determinant_identity() {
    let delta = run_suite(Suite::Delta, 1000, SEED);
    for note in &delta.notes {
        println!("  note: {note}");
    }
    conclude("4 (determinant identity at every index, 1000 fractions)", delta.ok());
}

#[test]
fn criterion_5_sequence_suite() {
    let rec = PolyRecurrence::a001697();
    let via_rec = generate(&rec, 8, DEFAULT_BIT_BUDGET).expect("within budget");
    let via_sum = a001697(8, DEFAULT_BIT_BUDGET).expect("within budget");
    let mut ok = via_rec.values() == via_sum.values();

    let expected_prefix: Vec<Int> = [1i64, 1, 2, 8, 96].iter().map(|&v| Int::from(v)).collect();
    ok &= via_rec.values()[..5] == expected_prefix[..];

    let report = check_invariants(&via_rec, &rec);
    ok &= report.all_ok();
    for failure in report.failures() {
        println!("  invariant failure: {} at {}", failure.invariant, failure.index);
    }
    // plus the randomized family sweep
    let suite = run_suite(Suite::Sequences, 200, SEED);
    ok &= suite.ok();
    for note in &suite.notes {
        println!("  note: {note}");
    }
    conclude("5 (recurrence sequences: dual routes, divisibility, growth)", ok);
}

#[test]
fn criterion_6_shifted_reciprocal_example() {
    let rec = PolyRecurrence::stationary(BivarPoly::x(), Int::one(), "a001697").expect("valid");
    let spec = SeriesSpec::new(rec, Int::from(3), SeriesKind::S, 4).expect("valid");
    let (shift, cf) = expand_inv_s_shifted(&spec).expect("shift exists");
    let mut ok = shift.shift() == 2 && shift.t() == &Int::from(5);
    ok &= cf.term(1) == &CfTerm::new(rat_int(2), rat_int(5));
    ok &= cf.term(2) == &CfTerm::new(rat_int(18), rat_int(5));
    println!(
        "  shift N = {}, t = {}, leading terms ({}, {}), ({}, {})",
        shift.shift(),
        shift.t(),
        cf.term(1).a,
        cf.term(1).b,
        cf.term(2).a,
        cf.term(2).b
    );
    conclude("6 (shifted reciprocal head: N = 2, t = 5, terms 2/5 + 18/5)", ok);
}

#[test]
fn criterion_7_series_truncation_identities() {
    // twenty pinned configurations meeting the preconditions
    let s_configs: [(&str, i64, i64); 10] = [
        ("X", 2, 1),
        ("X", 5, 3),
        ("X", 4, 2),
        ("Y", 2, 1),
        ("Y", 3, 2),
        ("2X", 3, 2),
        ("X+Y", 2, 1),
        ("X^2", 3, 1),
        ("X^2+Y", 2, 1),
        ("XY", 4, 3),
    ];
    let t_configs: [(&str, i64, i64); 10] = [
        ("Y", 1, 1),
        ("Y", 3, 2),
        ("Y", 2, 2),
        ("2X", 2, 2),
        ("2X", 3, 1),
        ("X^2", 2, 1),
        ("X+Y", 1, 1),
        ("X+Y", 3, 3),
        ("XY", 1, 1),
        ("X^2+Y", 2, 2),
    ];
    let n = 8;
    let mut ok = true;

    for (f, x1, h) in s_configs {
        let rec = PolyRecurrence::stationary(BivarPoly::parse(f).unwrap(), Int::from(x1), f)
            .expect("valid");
        let spec = SeriesSpec::new(rec, Int::from(h), SeriesKind::S, n).expect("valid");
        match expand_s(&spec) {
            Ok(cf) => {
                let seq = generate(spec.rec(), n, spec.budget_bits()).expect("within budget");
                for m in 1..=n {
                    if cf.eval(2 * m).ok() != Some(partial_sum_s(&seq, spec.h(), m)) {
                        println!("  S mismatch at F={f} x1={x1} h={h} m={m}");
                        ok = false;
                    }
                }
                ok &= cf
                    .terms()
                    .iter()
                    .all(|t| cfx_core::is_positive_integer(&t.a) && cfx_core::is_positive_integer(&t.b));
            }
            Err(e) => {
                println!("  S config F={f} x1={x1} h={h} failed: {e}");
                ok = false;
            }
        }
    }

    for (f, x1, h) in t_configs {
        let rec = PolyRecurrence::stationary(BivarPoly::parse(f).unwrap(), Int::from(x1), f)
            .expect("valid");
        let spec = SeriesSpec::new(rec, Int::from(h), SeriesKind::T, n).expect("valid");
        match expand_t(&spec) {
            Ok(cf) => {
                let seq = generate(spec.rec(), n, spec.budget_bits()).expect("within budget");
                for m in 2..=n {
                    if cf.eval(3 * m - 4).ok() != Some(partial_sum_t(&seq, spec.h(), m)) {
                        println!("  T mismatch at F={f} x1={x1} h={h} m={m}");
                        ok = false;
                    }
                }
                ok &= cf
                    .terms()
                    .iter()
                    .all(|t| cfx_core::is_positive_integer(&t.a) && cfx_core::is_positive_integer(&t.b));
            }
            Err(e) => {
                println!("  T config F={f} x1={x1} h={h} failed: {e}");
                ok = false;
            }
        }
    }

    // randomized sweep on top of the pinned table
    let suite = run_suite(Suite::Series, 100, SEED);
    ok &= suite.ok();
    for note in &suite.notes {
        println!("  note: {note}");
    }
    conclude("7 (S/T truncation identities on 20 configurations, m <= 8)", ok);
}

#[test]
fn criterion_8_regular_expansions_over_a001697() {
    let mut ok = true;
    let seq = a001697(9, DEFAULT_BIT_BUDGET).expect("within budget");
    let one = Int::one();

    // plain series: [1; 1, x1, 1, x2, ...] truncations
    for n in 1..=8 {
        let r = nouv1(n, DEFAULT_BIT_BUDGET).expect("within budget");
        if r.value().unwrap() != partial_sum_s(&seq, &one, n) {
            println!("  nouv1 truncation {n} mismatch");
            ok = false;
        }
    }
    // frozen hand values
    ok &= nouv1(4, DEFAULT_BIT_BUDGET).unwrap().value().unwrap() == rat(157, 96);
    ok &= nouv1(1, DEFAULT_BIT_BUDGET).unwrap().value().unwrap() == rat_int(1);

    // alternating series: [0; 1, 1, 1, x1, x2, ..., x_{n-1} - 1] truncations
    for n in 3..=8 {
        let r = nouv2(n, DEFAULT_BIT_BUDGET).expect("within budget");
        if r.value().unwrap() != partial_sum_t(&seq, &one, n) {
            println!("  nouv2 truncation {n} mismatch");
            ok = false;
        }
        let quotients = r.quotients();
        if quotients[quotients.len() - 1] != seq.x(n - 1) - &one {
            println!("  nouv2 final quotient at {n} is not x_(n-1) - 1");
            ok = false;
        }
    }
    // the depth covering x_3 evaluates to 1 - 1/2 + 1/8 - 1/96 = 59/96
    // (and the shorter n = 3 form to 5/8)
    ok &= nouv2(4, DEFAULT_BIT_BUDGET).unwrap().value().unwrap() == rat(59, 96);
    ok &= nouv2(3, DEFAULT_BIT_BUDGET).unwrap().value().unwrap() == rat(5, 8);

    // contraction path versus the formal zero-denominator path, both equal
    // to the alternating partial sums
    for (x1, h) in [(1i64, 1i64), (3, 2), (2, 2), (4, 1)] {
        for n in 3..=7usize {
            let rec = PolyRecurrence::stationary(BivarPoly::x(), Int::from(x1), "x").unwrap();
            let spec = SeriesSpec::new(rec, Int::from(h), SeriesKind::T, n).unwrap();
            let contracted = expand_t_contracted(&spec).expect("contracted form");
            let seq = generate(spec.rec(), n, spec.budget_bits()).expect("within budget");
            let want = partial_sum_t(&seq, spec.h(), n);
            if contracted.value().unwrap() != want {
                println!("  contracted value mismatch x1={x1} h={h} n={n}");
                ok = false;
            }
            let formal = formal_t(&spec.h().clone(), &seq, n);
            if formal.value().unwrap() != want {
                println!("  formal value mismatch x1={x1} h={h} n={n}");
                ok = false;
            }
            // collapsing every zero block term by term reproduces the value
            let mut reduced = formal;
            while let Some(j) = (2..reduced.len()).find(|&j| reduced.term(j).b.is_zero()) {
                reduced = reduced.contract_zero_denominator(j).expect("b_j = 0");
            }
            if reduced.len() != contracted.len() || reduced.value().unwrap() != want {
                println!("  stepwise contraction mismatch x1={x1} h={h} n={n}");
                ok = false;
            }
        }
    }
    // at h = x1 = 1 the contracted form *is* the regular expansion
    let rec = PolyRecurrence::a001697();
    for n in 3..=8usize {
        let spec = SeriesSpec::new(rec.clone(), Int::one(), SeriesKind::T, n).unwrap();
        let via_series = expand_t_contracted(&spec).unwrap().to_regular().unwrap();
        if via_series != nouv2(n, DEFAULT_BIT_BUDGET).unwrap() {
            println!("  contracted-to-regular differs from the closed form at {n}");
            ok = false;
        }
    }
    conclude("8 (regular expansions equal exact partial sums; paths agree)", ok);
}

/// Uncontracted alternating shape with its zero interior denominators.
fn formal_t(h: &Int, seq: &cfx_core::sequence::SequencePrefix, n: usize) -> GeneralizedCF {
    let h_rat = Rat::from_integer(h.clone());
    let len = 3 * n - 4;
    let mut terms = Vec::with_capacity(len);
    for idx in 1..=len {
        let term = match idx {
            1 => CfTerm::new(Rat::one(), Rat::from_integer(seq.x(1).clone())),
            2 => CfTerm::new(
                &h_rat * Rat::from_integer(seq.x(1).clone()),
                Rat::new(seq.x(2).clone(), seq.x(1).clone()) - &h_rat,
            ),
            3 => CfTerm::new(
                h_rat.clone(),
                Rat::from_integer(seq.x(1) + Int::one() - seq.x(1)),
            ),
            4 => CfTerm::new(Rat::from_integer(seq.x(1).clone()), Rat::one()),
            _ => {
                let k = (idx + 1) / 3;
                if idx == 3 * k - 1 {
                    CfTerm::new(
                        Rat::from_integer(h.pow(k as u32)),
                        Rat::from_integer(h.pow((k - 1) as u32) * (seq.x(k) - h)),
                    )
                } else if idx == 3 * k {
                    // F = X makes every interior b_3k vanish
                    CfTerm::new(Rat::from_integer(h.pow((k - 1) as u32)), Rat::zero())
                } else {
                    CfTerm::new(Rat::one(), Rat::one())
                }
            }
        };
        terms.push(term);
    }
    GeneralizedCF::new(terms).expect("nonzero numerators")
}

#[test]
fn criterion_9_equivalence_and_contraction() {
    let equivalence = run_suite(Suite::Equivalence, 200, SEED);
    let contraction = run_suite(Suite::Contraction, 1000, SEED);
    for report in [&equivalence, &contraction] {
        for note in &report.notes {
            println!("  note[{}]: {note}", report.suite);
        }
    }
    conclude(
        "9 (aux-to-plain term map; contraction preserves values, 1000 fractions)",
        equivalence.ok() && contraction.ok(),
    );
}
