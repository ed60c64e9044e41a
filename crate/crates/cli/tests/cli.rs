//! Exit-code and flag behavior of the binary: codes are a function of the
//! outcome alone — 0 success, 1 suite failure, 2 usage or configuration
//! error, 3 embedding failure, 4 inconclusive scan.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordsel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ordsel-cli-{}-{name}", std::process::id()))
}

#[test]
fn usage_and_config_errors_exit_2() {
    // Composition does not sum to the degree.
    let out = run(&["local", "--n", "4", "--f", "1,1,3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("sums to 5"));
    // Zero residue degree.
    assert_eq!(code(&run(&["local", "--n", "3", "--f", "0,3"])), 2);
    // Invalid field label.
    assert_eq!(code(&run(&["classgroup", "--", "-12"])), 2);
    assert_eq!(code(&run(&["classgroup", "seven"])), 2);
    // Unreadable and unparsable configuration files.
    assert_eq!(code(&run(&["selectivity", "/nonexistent.config"])), 2);
    let bad = tmp("bad.config");
    std::fs::write(&bad, "{\"base_field\":").unwrap();
    assert_eq!(code(&run(&["selectivity", bad.to_str().unwrap()])), 2);
    // Unknown subcommand and missing arguments (native usage errors).
    assert_eq!(code(&run(&["bogus"])), 2);
    assert_eq!(code(&run(&["local", "--n", "4"])), 2);
}

#[test]
fn embedding_failure_exits_3_with_the_report() {
    let json_path = tmp("abhn.json");
    let out = run(&[
        "selectivity",
        config_path("abhn_fail.config").to_str().unwrap(),
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["status"], "abhn_fail");
    assert_eq!(report["detail"], "L does not embed in B");
    assert_eq!(report["L0_index"], Value::Null);
    assert_eq!(report["ratio"], Value::Null);
}

#[test]
fn starved_scan_exits_4_and_says_inconclusive() {
    let out = run(&[
        "selectivity",
        config_path("example_paper.config").to_str().unwrap(),
        "--bound",
        "30",
    ]);
    assert_eq!(code(&out), 4);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Status: inconclusive"));
}

#[test]
fn scan_flags_reach_the_engine() {
    let json_path = tmp("flags.json");
    let out = run(&[
        "selectivity",
        config_path("example_paper.config").to_str().unwrap(),
        "--bound",
        "2000",
        "--window",
        "40",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    // Still conclusive: the last informative prime is 263, well inside.
    assert_eq!(code(&out), 0);
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["L0_index"], "2");
}

#[test]
fn verify_passes_and_catches_injected_faults() {
    let out = run(&["verify", "--n-max", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("local-oracle"));
    assert!(text.contains("ok"));
    let out = run(&["verify", "--n-max", "3", "--inject-fault"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAILED"));
    assert!(text.contains("first counterexample"));
}

#[test]
fn verify_checks_a_supplied_config_first() {
    let out = run(&[
        "verify",
        config_path("example_paper.config").to_str().unwrap(),
        "--n-max",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("resolves cleanly"));
    let bad = tmp("verify-bad.config");
    std::fs::write(&bad, "{}").unwrap();
    assert_eq!(code(&run(&["verify", bad.to_str().unwrap()])), 2);
}

#[test]
fn local_certificate_json_matches_the_text() {
    let json_path = tmp("local.json");
    let out = run(&[
        "local",
        "--n",
        "4",
        "--f",
        "1,1,2",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let cert: Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(cert["degree"], 4);
    assert_eq!(cert["admissible_types"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(
        cert["chamber_vertices"],
        serde_json::json!([[0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0]])
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Admissible vertex types: {0, 1, 2, 3}"));
}
