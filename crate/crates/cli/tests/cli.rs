use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_parafermion");

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_spec(name: &str, text: &str) -> PathBuf {
    let path = scratch(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_relations_passes() {
    let out = run(&["verify-relations", "--n", "3", "--L", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["dim"], 9);
    assert!(r["relations"]["commutation_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn counterexample_is_a_violation() {
    let out = run(&["counterexample", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    let value = r["value"].as_array().unwrap();
    assert!(value[0].as_f64().unwrap().abs() < 1e-12);
    assert!((value[1].as_f64().unwrap() - 2.35040239).abs() < 1e-8);
    assert_eq!(r["positive"], false);
}

#[test]
fn rp_check_on_valid_chain() {
    let spec = write_spec("valid.json", r#"{"baxter": {"n": 3, "L": 4, "t": [0.5, -0.7, 0.5]}}"#);
    let out = run(&[
        "rp-check",
        "--spec",
        spec.to_str().unwrap(),
        "--samples",
        "500",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "gram_min_eigenvalue",
            "max_diagonal_imag_abs",
            "min_diagonal_real",
            "partition_function",
            "samples",
            "seed",
            "tolerance",
            "violations"
        ]
    );
    assert_eq!(r["samples"], 500);
    assert_eq!(r["seed"], 7);
    assert!(r["violations"].as_array().unwrap().is_empty());
}

#[test]
fn positive_middle_bond_reports_violations() {
    let spec = write_spec("invalid.json", r#"{"baxter": {"n": 3, "L": 4, "t": [0.5, 0.7, 0.5]}}"#);
    let out = run(&["baxter", "--spec", spec.to_str().unwrap(), "--samples", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["rule"], "none");
    assert!(!r["rp"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_spec_reports_position() {
    let spec = write_spec("broken.json", "{\n  \"n\": 3,\n  \"L\": 4,\n  \"h_minus\": [oops]\n}\n");
    let out = run(&["rp-check", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4 column"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn semantic_spec_errors_name_the_field() {
    let spec = write_spec(
        "observable.json",
        r#"{"n": 3, "L": 4, "h_minus": [{"coefficient": [1, 0], "exponents": [1, 0, 0, 0]}]}"#,
    );
    let out = run(&["rp-check", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1,0,0,0)"));
}

#[test]
fn dimension_cap_reports_required_and_cap() {
    let out = run(&["verify-relations", "--n", "2", "--L", "26"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("8192") && err.contains("4096"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["trotter", "--n", "3", "--L", "3"],
        vec!["rp-check", "--n", "3", "--L", "4"],
        vec!["counterexample", "--n", "3", "--j", "7"],
        vec!["families", "--family", "3", "--kparam", "4", "--jprime", "1"],
        vec!["rp-check", "--spec", "/nonexistent/spec.json"],
        vec!["bounds", "--tol", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn flags_override_spec_shape() {
    let spec = write_spec("shape.json", r#"{"baxter": {"n": 3, "L": 4, "t": [-1, -1, -1]}}"#);
    let out = run(&["verify-relations", "--spec", spec.to_str().unwrap(), "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!((r["n"].as_u64(), r["L"].as_u64()), (Some(5), Some(4)));
}

#[test]
fn out_path_receives_report() {
    let path = scratch("families.json");
    let out = run(&["families", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["pairs"].as_array().unwrap().len(), 4);
}

#[test]
fn unwritable_out_path_fails() {
    let out = run(&["families", "--out", "/nonexistent/dir/report.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn remaining_commands_pass_on_valid_input() {
    let spec = write_spec("bounds.json", r#"{"baxter": {"n": 2, "L": 4, "t": [0.7, -1.1, 0.7]}}"#);
    let s = spec.to_str().unwrap();
    for args in [
        vec!["gram", "--spec", s],
        vec!["bounds", "--spec", s, "--samples", "40"],
        vec!["trotter", "--spec", s],
        vec!["trotter", "--n", "3", "--L", "2"],
        vec!["decompose", "--spec", s],
        vec!["baxter", "--n", "3", "--L", "4", "--samples", "40"],
    ] {
        let out = run(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}
