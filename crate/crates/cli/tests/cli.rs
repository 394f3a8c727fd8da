//! End-to-end checks of the `cfx` binary: flag validation, exit codes,
//! JSON shapes, and determinism under a fixed seed.

use std::process::{Command, Output};

fn cfx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfx"))
        .args(args)
        .env_remove("CFX_BIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

#[test]
fn transform_euler_matches_oracle() {
    let out = cfx(&["transform", "euler", "--x", "2,3", "--y", "1,1", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["value"], "1/6");
    assert_eq!(v["oracle"], "1/6");
    assert_eq!(v["match"], true);
    assert_eq!(v["cf"]["terms"][0][0], "1");
    assert_eq!(v["cf"]["terms"][1][1], "1/2");
}

#[test]
fn transform_hone_single_summand() {
    let out = cfx(&["transform", "hone", "--x", "5", "--y", "1", "--json"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], "1/5");
}

#[test]
fn transform_varona_needs_two_summands() {
    let out = cfx(&["transform", "varona", "--x", "2", "--y", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n >= 2"));
}

#[test]
fn transform_rejects_mismatched_lists() {
    let out = cfx(&["transform", "euler", "--x", "2,3", "--y", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invert_round_trips_a_transform() {
    let out = cfx(&[
        "invert",
        "hone",
        "--cf",
        r#"{"terms":[["1","1"],["1","1"],["1","1"],["1","2"]]}"#,
        "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["terms"][0], "1/2");
    assert_eq!(v["terms"][1], "1/8");
    assert_eq!(v["total"], "5/8");
    assert_eq!(v["match"], true);
}

#[test]
fn invert_rejects_bad_document() {
    let out = cfx(&["invert", "euler", "--cf", r#"{"terms":[["0","1"]]}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sequence_preset_values() {
    let out = cfx(&["sequence", "--preset", "a001697", "--n", "4", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["values"], serde_json::json!(["1", "1", "2", "8", "96"]));
    assert_eq!(v["invariants_ok"], true);
}

#[test]
fn sequence_custom_f() {
    let out = cfx(&["sequence", "--f", "X", "--x1", "3", "--n", "3", "--json"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["values"], serde_json::json!(["1", "3", "18", "432"]));
}

#[test]
fn sequence_accepts_config_document() {
    let out = cfx(&["sequence", "--rec", r#"{"f":"X","x1":"3","name":"demo"}"#, "--n", "3", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["name"], "demo");
    assert_eq!(v["values"], serde_json::json!(["1", "3", "18", "432"]));

    let out = cfx(&["sequence", "--rec", "{}", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sequence_budget_guard_and_override() {
    let out = cfx(&["sequence", "--preset", "a001697", "--n", "50"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget"));

    let out = Command::new(env!("CARGO_BIN_EXE_cfx"))
        .args(["sequence", "--preset", "a001697", "--n", "12", "--json"])
        .env("CFX_BIT_BUDGET", "100000000")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", stderr(&out));

    let out = Command::new(env!("CARGO_BIN_EXE_cfx"))
        .args(["sequence", "--preset", "a001697", "--n", "4"])
        .env("CFX_BIT_BUDGET", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_inv_s_reproduces_shifted_head() {
    let out = cfx(&["series", "invS", "--f", "X", "--x1", "1", "--h", "3", "--n", "6", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["shift"]["n"], 2);
    assert_eq!(v["shift"]["t"], "5");
    assert_eq!(v["shift"]["degenerate"], false);
    assert_eq!(v["cf"]["terms"][0], serde_json::json!(["2", "5"]));
    assert_eq!(v["cf"]["terms"][1], serde_json::json!(["18", "5"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn series_s_all_integer_terms() {
    let out = cfx(&["series", "S", "--f", "X", "--x1", "2", "--h", "1", "--n", "5", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verified"], true);
    for term in v["cf"]["terms"].as_array().expect("terms array") {
        for part in term.as_array().expect("pair") {
            let s = part.as_str().expect("string number");
            assert!(!s.contains('/') && !s.starts_with('-'), "non-integer term {s}");
        }
    }
}

#[test]
fn series_t_auto_routes_to_contracted() {
    let out = cfx(&["series", "T", "--f", "X", "--x1", "1", "--h", "1", "--n", "5", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["series"], "T-contracted");
    assert!(v["notice"].as_str().expect("notice").contains("contracted"));
    assert_eq!(v["verified"], true);

    // a family with F != X takes the plain path, no notice
    let out = cfx(&["series", "T", "--f", "Y", "--x1", "1", "--h", "1", "--n", "5", "--json"]);
    let v = json(&out);
    assert_eq!(v["series"], "T");
    assert!(v.get("notice").is_none());
}

#[test]
fn series_rejects_x1_below_h() {
    let out = cfx(&["series", "S", "--f", "X", "--x1", "1", "--h", "3", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("shifted"));
}

#[test]
fn verify_single_suite_and_all() {
    let out = cfx(&["verify", "euler", "--trials", "50", "--seed", "7", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["reports"][0]["passed"], 50);

    let out = cfx(&["verify", "all", "--trials", "5", "--seed", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 10);

    let out = cfx(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_output_is_deterministic_per_seed() {
    let a = cfx(&["verify", "delta", "--trials", "60", "--seed", "11", "--json"]);
    let b = cfx(&["verify", "delta", "--trials", "60", "--seed", "11", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
}
