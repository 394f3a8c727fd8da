//! `cfx` — exact continued-fraction toolkit.
//!
//! Subcommands:
//!
//! * `transform` — turn a finite sum into a continued fraction and check it
//!   against the direct-summation oracle;
//! * `invert` — expand a continued fraction back into a finite sum;
//! * `sequence` — generate a quadratic-recurrence integer sequence and
//!   report its invariants;
//! * `series` — build the S / T / 1/S expansions with exact verification;
//! * `verify` — run a seeded randomized identity suite.
//!
//! All numbers are exact decimal strings (`"p"` or `"p/q"`); nothing is
//! ever rounded. Exit codes: 0 success (and every verification in the
//! invocation passed), 1 a verification failed, 2 invalid usage, 3 an
//! engine error (violated precondition, budget, degenerate input).

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cfx_core::arith::{parse_int, parse_rat, rat_to_string, Int, Rat};
use cfx_core::cf::GeneralizedCF;
use cfx_core::poly::BivarPoly;
use cfx_core::sequence::{
    a001697, check_invariants, generate, InvariantReport, PolyRecurrence, SequencePrefix,
    DEFAULT_BIT_BUDGET,
};
use cfx_core::series::{
    expand_inv_s_shifted, expand_s, expand_t, expand_t_contracted, partial_sum_s, partial_sum_t,
    SeriesKind, SeriesSpec,
};
use cfx_core::transform::{
    cf_to_sum_euler, cf_to_sum_hone, cf_to_sum_varona, euler_cf, hone_cf, sum_sigma, sum_tau,
    varona_aux_cf, varona_cf, SumSpec,
};
use cfx_core::verify::{run_suite, Suite, SuiteReport, ALL_SUITES};
use cfx_core::Error as CoreError;

#[derive(Parser)]
#[command(name = "cfx", version, about = "Exact continued-fraction toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of the human table
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a finite sum sum y_k/x_k into a continued fraction
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        /// Comma-separated exact numbers x_1,...,x_n ("p" or "p/q")
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<String>,
        /// Comma-separated exact numbers y_1,...,y_n
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<String>,
    },
    /// Expand a continued fraction back into a finite sum
    Invert {
        #[arg(value_enum)]
        kind: InvertKind,
        /// The fraction as JSON: {"integer_part":"0","terms":[["a","b"],...]}
        #[arg(long)]
        cf: String,
        /// Depth (euler), pair count (hone), or block count (varona);
        /// defaults to the maximum the fraction supports
        #[arg(long)]
        n: Option<usize>,
    },
    /// Generate a recurrence sequence x_{n+2} x_n = x_{n+1}^2 (F + 1)
    Sequence {
        /// Use a named preset (a001697) instead of --f/--x1
        #[arg(long, conflicts_with_all = ["f", "x1", "rec"])]
        preset: Option<SequencePreset>,
        /// Polynomial F as "X", "X+Y", "2X^2*Y", or JSON [[degX,degY,coeff],...]
        #[arg(long)]
        f: Option<String>,
        /// Starting value x_1 (positive integer)
        #[arg(long)]
        x1: Option<String>,
        /// Full recurrence config as JSON: {"f": ..., "x1": "...", "name": "..."}
        #[arg(long, conflicts_with_all = ["f", "x1"])]
        rec: Option<String>,
        /// Last index to generate (the output holds x_0..x_n)
        #[arg(long)]
        n: usize,
    },
    /// Expand the series S = sum h^n/x_{n+1} or its alternating companion
    Series {
        #[arg(value_enum)]
        kind: SeriesCmdKind,
        /// Polynomial F driving the recurrence
        #[arg(long, default_value = "X")]
        f: String,
        /// Starting value x_1 (positive integer)
        #[arg(long)]
        x1: String,
        /// The ratio base h (positive integer)
        #[arg(long, default_value = "1")]
        h: String,
        /// Number of series terms the truncation must cover
        #[arg(long)]
        n: usize,
    },
    /// Run a seeded randomized identity suite
    Verify {
        /// Suite name (delta, euler, hone, varona, lemmas, sequences,
        /// series, proofs, equivalence, contraction) or "all"
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    Euler,
    Hone,
    Varona,
    #[value(name = "varona-aux")]
    VaronaAux,
}

impl TransformKind {
    fn name(self) -> &'static str {
        match self {
            TransformKind::Euler => "euler",
            TransformKind::Hone => "hone",
            TransformKind::Varona => "varona",
            TransformKind::VaronaAux => "varona-aux",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InvertKind {
    Euler,
    Hone,
    Varona,
}

#[derive(Clone, Copy, ValueEnum)]
enum SequencePreset {
    A001697,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesCmdKind {
    #[value(name = "S")]
    S,
    #[value(name = "T")]
    T,
    #[value(name = "invS")]
    InvS,
    #[value(name = "T-contracted")]
    TContracted,
}

/// Failures the command layer distinguishes for exit codes.
enum CmdError {
    /// Bad flags or inconsistent options: exit 2.
    Usage(String),
    /// The engine rejected the request: exit 3.
    Engine(CoreError),
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        CmdError::Engine(e)
    }
}

fn main() {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = match cli.command {
        Command::Transform { kind, x, y } => cmd_transform(kind, &x, &y, json),
        Command::Invert { kind, cf, n } => cmd_invert(kind, &cf, n, json),
        Command::Sequence { preset, f, x1, rec, n } => cmd_sequence(preset, f, x1, rec, n, json),
        Command::Series { kind, f, x1, h, n } => cmd_series(kind, &f, &x1, &h, n, json),
        Command::Verify { suite, trials, seed } => cmd_verify(&suite, trials, seed, json),
    };
    match outcome {
        // 0 when every verification in the invocation passed, 1 otherwise
        Ok(all_verified) => std::process::exit(if all_verified { 0 } else { 1 }),
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CmdError::Engine(e)) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}

fn bit_budget() -> Result<u64, CmdError> {
    match std::env::var("CFX_BIT_BUDGET") {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|_| CmdError::Usage(format!("CFX_BIT_BUDGET must be a positive integer, got {raw:?}"))),
        Err(_) => Ok(DEFAULT_BIT_BUDGET),
    }
}

fn parse_rat_list(name: &str, raw: &[String]) -> Result<Vec<Rat>, CmdError> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| {
            parse_rat(s).map_err(|e| CmdError::Usage(format!("--{name} entry {}: {e}", i + 1)))
        })
        .collect()
}

/// Render a fraction as `a1/b1 + a2/b2 + ...`, bracketing non-integers.
fn fmt_cf(cf: &GeneralizedCF) -> String {
    let wrap = |q: &Rat| {
        let s = rat_to_string(q);
        if s.contains('/') || s.starts_with('-') {
            format!("[{s}]")
        } else {
            s
        }
    };
    let mut out = String::new();
    if cf.integer_part() != &Rat::from_integer(Int::from(0)) {
        out.push_str(&rat_to_string(cf.integer_part()));
        out.push_str(" + ");
    }
    let parts: Vec<String> = cf
        .terms()
        .iter()
        .map(|t| format!("{}/{}", wrap(&t.a), wrap(&t.b)))
        .collect();
    out.push_str(&parts.join(" + "));
    out
}

fn print_kv(rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        println!("{k:<width$}  {v}");
    }
}

#[derive(Serialize)]
struct TransformOutput {
    kind: &'static str,
    n: usize,
    cf: GeneralizedCF,
    value: String,
    oracle: String,
    #[serde(rename = "match")]
    matches: bool,
}

fn cmd_transform(
    kind: TransformKind,
    x: &[String],
    y: &[String],
    json: bool,
) -> Result<bool, CmdError> {
    if x.len() != y.len() {
        return Err(CmdError::Usage(format!(
            "--x has {} entries but --y has {}",
            x.len(),
            y.len()
        )));
    }
    let spec = SumSpec::new(parse_rat_list("x", x)?, parse_rat_list("y", y)?)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    if matches!(kind, TransformKind::Varona | TransformKind::VaronaAux) && spec.n() < 2 {
        return Err(CmdError::Usage("the varona shapes need n >= 2".into()));
    }
    let (cf, oracle) = match kind {
        TransformKind::Euler => (euler_cf(&spec), sum_tau(&spec)),
        TransformKind::Hone => (hone_cf(&spec), sum_sigma(&spec)),
        TransformKind::Varona => (varona_cf(&spec)?, sum_tau(&spec)),
        TransformKind::VaronaAux => (varona_aux_cf(&spec)?, sum_tau(&spec)),
    };
    let value = cf.value()?;
    let matches = value == oracle;
    let out = TransformOutput {
        kind: kind.name(),
        n: spec.n(),
        value: rat_to_string(&value),
        oracle: rat_to_string(&oracle),
        matches,
        cf,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        print_kv(&[
            ("kind", out.kind.to_string()),
            ("n", out.n.to_string()),
            ("cf", fmt_cf(&out.cf)),
            ("value", out.value.clone()),
            ("oracle", out.oracle.clone()),
            ("match", out.matches.to_string()),
        ]);
    }
    Ok(matches)
}

#[derive(Serialize)]
struct InvertOutput {
    kind: &'static str,
    n: usize,
    depth: usize,
    terms: Vec<String>,
    total: String,
    value: String,
    #[serde(rename = "match")]
    matches: bool,
}

fn cmd_invert(kind: InvertKind, raw: &str, n: Option<usize>, json: bool) -> Result<bool, CmdError> {
    let cf: GeneralizedCF = serde_json::from_str(raw)
        .map_err(|e| CmdError::Usage(format!("--cf is not a valid fraction document: {e}")))?;
    if cf.is_empty() {
        return Err(CmdError::Usage("--cf needs at least one term".into()));
    }
    let (name, n, depth) = match kind {
        InvertKind::Euler => {
            let n = n.unwrap_or(cf.len());
            ("euler", n, n)
        }
        InvertKind::Hone => {
            let n = n.unwrap_or(cf.len() / 2);
            ("hone", n, 2 * n)
        }
        InvertKind::Varona => {
            let n = n.unwrap_or((cf.len() + 1) / 3);
            (
                "varona",
                n,
                3 * n.max(1) - 1,
            )
        }
    };
    if n == 0 {
        return Err(CmdError::Usage("need n >= 1".into()));
    }
    if depth > cf.len() {
        return Err(CmdError::Usage(format!(
            "n = {n} needs {depth} terms, the fraction has {}",
            cf.len()
        )));
    }
    let terms = match kind {
        InvertKind::Euler => cf_to_sum_euler(&cf, n)?,
        InvertKind::Hone => cf_to_sum_hone(&cf, n)?,
        InvertKind::Varona => cf_to_sum_varona(&cf, n)?,
    };
    let total: Rat = terms.iter().sum();
    let value = cf.eval(depth)?;
    let matches = total == value;
    let out = InvertOutput {
        kind: name,
        n,
        depth,
        terms: terms.iter().map(rat_to_string).collect(),
        total: rat_to_string(&total),
        value: rat_to_string(&value),
        matches,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        print_kv(&[
            ("kind", out.kind.to_string()),
            ("n", out.n.to_string()),
            ("depth", out.depth.to_string()),
            ("terms", out.terms.join(", ")),
            ("total", out.total.clone()),
            ("value", out.value.clone()),
            ("match", out.matches.to_string()),
        ]);
    }
    Ok(matches)
}

#[derive(Serialize)]
struct SequenceOutput {
    #[serde(flatten)]
    sequence: SequencePrefix,
    invariants_ok: bool,
    failures: Vec<String>,
}

fn cmd_sequence(
    preset: Option<SequencePreset>,
    f: Option<String>,
    x1: Option<String>,
    rec: Option<String>,
    n: usize,
    json: bool,
) -> Result<bool, CmdError> {
    if n < 1 {
        return Err(CmdError::Usage("need --n >= 1".into()));
    }
    let budget = bit_budget()?;
    let rec = match (preset, f, x1, rec) {
        (Some(SequencePreset::A001697), ..) => PolyRecurrence::a001697(),
        (None, _, _, Some(doc)) => serde_json::from_str(&doc)
            .map_err(|e| CmdError::Usage(format!("--rec is not a valid config: {e}")))?,
        (None, Some(f), x1, None) => {
            let poly = BivarPoly::parse(&f).map_err(|e| CmdError::Usage(e.to_string()))?;
            let x1 = match x1 {
                Some(raw) => parse_int(&raw).map_err(|e| CmdError::Usage(e.to_string()))?,
                None => return Err(CmdError::Usage("--f needs --x1".into())),
            };
            PolyRecurrence::stationary(poly, x1, f).map_err(|e| CmdError::Usage(e.to_string()))?
        }
        (None, None, ..) => {
            return Err(CmdError::Usage(
                "pick --preset a001697, give --f and --x1, or pass --rec".into(),
            ))
        }
    };
    let seq = generate(&rec, n, budget)?;
    // cross-check the preset against its independent partial-sum form
    if rec.name() == "a001697" {
        let dual = a001697(n, budget)?;
        if dual.values() != seq.values() {
            return Err(CmdError::Engine(CoreError::PreconditionViolated(
                "a001697 dual definitions disagree".into(),
            )));
        }
    }
    let report = check_invariants(&seq, &rec);
    let out = SequenceOutput {
        invariants_ok: report.all_ok(),
        failures: describe_failures(&report),
        sequence: seq,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        let values: Vec<String> =
            out.sequence.values().iter().map(|v| v.to_string()).collect();
        print_kv(&[
            ("name", out.sequence.name().to_string()),
            ("values", values.join(", ")),
            ("invariants", if out.invariants_ok { "ok".into() } else { out.failures.join("; ") }),
        ]);
    }
    Ok(out.invariants_ok)
}

fn describe_failures(report: &InvariantReport) -> Vec<String> {
    report
        .failures()
        .map(|c| format!("{} at index {}: {}", c.invariant, c.index, c.detail))
        .collect()
}

#[derive(Serialize)]
struct ShiftOutput {
    n: usize,
    t: String,
    degenerate: bool,
}

#[derive(Serialize)]
struct SeriesOutput {
    series: &'static str,
    #[serde(rename = "F")]
    f: BivarPoly,
    x1: String,
    h: String,
    truncation: usize,
    cf: GeneralizedCF,
    partial_sum: String,
    value: String,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<ShiftOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    notice: Option<String>,
}

fn cmd_series(
    kind: SeriesCmdKind,
    f: &str,
    x1: &str,
    h: &str,
    n: usize,
    json: bool,
) -> Result<bool, CmdError> {
    let poly = BivarPoly::parse(f).map_err(|e| CmdError::Usage(e.to_string()))?;
    let x1 = parse_int(x1).map_err(|e| CmdError::Usage(e.to_string()))?;
    let h = parse_int(h).map_err(|e| CmdError::Usage(e.to_string()))?;
    let budget = bit_budget()?;
    let series_kind = match kind {
        SeriesCmdKind::S | SeriesCmdKind::InvS => SeriesKind::S,
        SeriesCmdKind::T | SeriesCmdKind::TContracted => SeriesKind::T,
    };
    let rec = PolyRecurrence::stationary(poly.clone(), x1.clone(), f)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let spec = SeriesSpec::new(rec, h.clone(), series_kind, n)
        .map_err(|e| CmdError::Usage(e.to_string()))?
        .with_budget_bits(budget);

    let mut notice = None;
    let mut shift_out = None;
    let (label, cf, partial, value): (&'static str, GeneralizedCF, Rat, Rat) = match kind {
        SeriesCmdKind::S => {
            let cf = expand_s(&spec)?;
            let seq = generate(spec.rec(), n, budget)?;
            let partial = partial_sum_s(&seq, spec.h(), n);
            let value = cf.value()?;
            ("S", cf, partial, value)
        }
        SeriesCmdKind::T | SeriesCmdKind::TContracted => {
            let (label, cf) = match kind {
                SeriesCmdKind::T => match expand_t(&spec) {
                    Ok(cf) => ("T", cf),
                    // the F = X family needs the concatenated form
                    Err(CoreError::PreconditionViolated(msg)) if msg.contains("contracted") => {
                        notice = Some(format!("{msg}; emitted the contracted form"));
                        ("T-contracted", expand_t_contracted(&spec)?)
                    }
                    Err(e) => return Err(e.into()),
                },
                _ => ("T-contracted", expand_t_contracted(&spec)?),
            };
            let seq = generate(spec.rec(), n, budget)?;
            let partial = partial_sum_t(&seq, spec.h(), n);
            let value = cf.value()?;
            (label, cf, partial, value)
        }
        SeriesCmdKind::InvS => {
            let (shift, cf) = expand_inv_s_shifted(&spec)?;
            let seq = generate(spec.rec(), shift.shift() + n, budget)?;
            let partial = partial_sum_s(&seq, spec.h(), shift.shift() + n);
            let value = cf.value()?;
            if shift.is_degenerate() {
                notice = Some(
                    "x_1 already exceeds h: the head term is the formal x_0/0".into(),
                );
            }
            shift_out = Some(ShiftOutput {
                n: shift.shift(),
                t: shift.t().to_string(),
                degenerate: shift.is_degenerate(),
            });
            ("invS", cf, partial, value)
        }
    };

    let verified = match kind {
        SeriesCmdKind::InvS => value == Rat::new(Int::from(1), Int::from(1)) / &partial,
        _ => value == partial,
    };
    let out = SeriesOutput {
        series: label,
        f: poly,
        x1: x1.to_string(),
        h: h.to_string(),
        truncation: n,
        partial_sum: rat_to_string(&partial),
        value: rat_to_string(&value),
        verified,
        shift: shift_out,
        notice,
        cf,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        let mut rows = vec![
            ("series", out.series.to_string()),
            ("F", out.f.to_text()),
            ("x1", out.x1.clone()),
            ("h", out.h.clone()),
            ("truncation", out.truncation.to_string()),
            ("cf", fmt_cf(&out.cf)),
            ("partial sum", out.partial_sum.clone()),
            ("value", out.value.clone()),
            ("verified", out.verified.to_string()),
        ];
        if let Some(shift) = &out.shift {
            rows.push(("shift N", shift.n.to_string()));
            rows.push(("shift t", shift.t.clone()));
            if shift.degenerate {
                rows.push(("degenerate", "true".into()));
            }
        }
        if let Some(notice) = &out.notice {
            rows.push(("notice", notice.clone()));
        }
        print_kv(&rows);
    }
    Ok(verified)
}

#[derive(Serialize)]
struct VerifyOutput {
    reports: Vec<SuiteReport>,
    ok: bool,
}

fn cmd_verify(suite: &str, trials: u64, seed: u64, json: bool) -> Result<bool, CmdError> {
    if trials == 0 {
        return Err(CmdError::Usage("need --trials >= 1".into()));
    }
    let suites: Vec<Suite> = if suite == "all" {
        ALL_SUITES.to_vec()
    } else {
        match Suite::from_name(suite) {
            Some(s) => vec![s],
            None => {
                let names: Vec<&str> = ALL_SUITES.iter().map(|s| s.name()).collect();
                return Err(CmdError::Usage(format!(
                    "unknown suite {suite:?}; pick one of {} or \"all\"",
                    names.join(", ")
                )));
            }
        }
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, trials, seed)).collect();
    let ok = reports.iter().all(SuiteReport::ok);
    if json {
        let out = VerifyOutput { ok, reports };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        for r in &reports {
            println!(
                "{:<12} seed {:<6} {}/{} passed{}",
                r.suite,
                r.seed,
                r.passed,
                r.trials,
                if r.ok() { "" } else { "  FAILED" }
            );
            for note in &r.notes {
                println!("    {note}");
            }
        }
    }
    Ok(ok)
}
