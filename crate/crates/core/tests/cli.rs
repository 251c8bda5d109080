use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_algapprox")).args(args).output().unwrap();
    (
        out.status.success(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (ok, out, err) = run(args);
    assert!(ok, "{args:?} failed: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn classify_paper_f() {
    let v = json(&["criteria", "check", "--poly", "paper-f"]);
    assert_eq!(v["galois"], "galois");
    assert_eq!(v["automorphisms"], 6);
}

#[test]
fn pell_records() {
    let v = json(&["approx", "pell", "--r", "2", "--s", "3", "--count", "3"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn enumerate_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("units.json");
    let args = ["normform", "enumerate", "--poly", "paper-f", "--n", "2", "--xmax", "3"];
    let (_, stdout, _) = run(&args);
    let mut with_out = vec!["--out", path.to_str().unwrap()];
    with_out.extend(args);
    let (ok, _, err) = run(&with_out);
    assert!(ok, "{err}");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["solutions"].as_array().unwrap().iter().all(|s| s["norm_value"].as_i64().unwrap().abs() == 1));
}

#[test]
fn profile_csv_header() {
    let (ok, out, _) = run(&["--format", "csv", "normform", "profile", "--poly", "paper-f", "--n", "2", "--xmax", "3"]);
    assert!(ok);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("X,min_norm,argmin"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn catalog_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "[\n  {\"label\": \"a\", \"poly\": [1, 0, 2]}\n]\n").unwrap();
    let (ok, _, err) = run(&["experiment", "sample", "--catalog", path.to_str().unwrap()]);
    assert!(!ok);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn golden_passes() {
    let v = json(&["golden", "run"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn bad_poly_is_an_error() {
    let (ok, _, err) = run(&["criteria", "check", "--poly", "1,2,x"]);
    assert!(!ok);
    assert!(!err.is_empty());
}
