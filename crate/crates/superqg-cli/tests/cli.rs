use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn superqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superqg")).args(args).env_remove("SUPERQG_JOBS").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("superqg-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn a2_adjoint_has_two_at_the_middle_weight() {
    let out = superqg(&["hw", "dims", "--preset", "A2", "--lambda", "1,1", "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["table"]["1,1"], 2);
    assert_eq!(v["table"]["0,0"], 1);
    assert_eq!(v["table"]["2,2"], 1);
    assert_eq!(v["table"]["3,0"], 0);
}

#[test]
fn parity_violating_datum_is_a_check_failure() {
    let path = scratch("bad.json", r#"{"name":"bad","a":[[2,-1],[-1,2]],"d":[1,1],"parity":[1,0]}"#);
    let out = superqg(&["cartan", "check", "--datum", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert!(v["message"].as_str().unwrap().contains("superdatum parity"), "{v}");
}

#[test]
fn short_datum_file_is_completed() {
    let path = scratch("b2.json", r#"{"name":"B2like","a":[[2,-1],[-2,2]],"d":[2,1],"parity":[0,0]}"#);
    let out = superqg(&["cartan", "check", "--datum", path.to_str().unwrap(), "--cutoff", "4"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["positive_roots"].as_array().unwrap().len(), 4);
}

#[test]
fn full_suite_on_a1odd_passes_and_is_reproducible() {
    let args = ["verify", "all", "--preset", "A1odd", "--cutoff", "5"];
    let first = superqg(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    let v = json(&first);
    assert_eq!(v["ok"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 11);
    let again = superqg(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(first.stdout, again.stdout);
}

#[test]
fn config_errors_exit_two_with_json() {
    for args in [
        &["hw", "dims", "--preset", "Z9", "--lambda", "1"][..],
        &["hw", "dims", "--preset", "A2", "--lambda", "1"],
        &["uminus", "dim"],
        &["hw", "dims", "--preset", "A2", "--lambda", "1,1", "--cutoff", "0"],
        &["cartan", "check", "--datum", "/nonexistent/datum.json"],
        &["qhs", "dim", "--preset", "A2", "--beta", "1,1", "--format", "csv"],
        &["hw", "frobnicate"],
    ] {
        let out = superqg(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let v = json(&out);
        assert_eq!(v["ok"], false, "{args:?}");
        assert!(v["message"].is_string());
    }
}

#[test]
fn csv_flattens_dimension_tables() {
    let out = superqg(&["uminus", "dim", "--preset", "B2", "--cutoff", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta,value"));
    assert!(text.contains("\"1,2\",3"), "{text}");
}

#[test]
fn straighten_emits_pbw_terms() {
    let out = superqg(&["qhs", "straighten", "--preset", "A1odd", "--n", "2", "--expr", "t1*x2*e(0,0)"]);
    assert_eq!(out.status.code(), Some(0));
    let terms = json(&out)["terms"].as_array().unwrap().clone();
    assert!(!terms.is_empty());
    for t in &terms {
        for field in ["nu", "a", "w", "coeff"] {
            assert!(!t[field].is_null(), "missing {field} in {t}");
        }
    }
    let bad = superqg(&["qhs", "straighten", "--preset", "A1odd", "--n", "2", "--expr", "t7"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn params_file_is_accepted() {
    let path = scratch("params.json", r#"{"preset":"BKM"}"#);
    let out = superqg(&["hw", "verify", "--preset", "A1odd", "--lambda", "2", "--cutoff", "3", "--params", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn output_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("superqg-cli-{}-out.json", std::process::id()));
    let out = superqg(&["hw", "char", "--preset", "A1", "--lambda", "2", "--cutoff", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["table"]["2"], 1);
    assert_eq!(v["table"]["3"], 0);
}
