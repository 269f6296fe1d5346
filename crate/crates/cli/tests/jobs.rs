use std::io::Write;
use std::process::{Command, Stdio};

use bethe_cli::{parse_job, run_job, run_suite, CliError, Job, Status};
use bethe_core::Rat;
use serde_json::{json, Value};

fn job(kind: &str, params: Value) -> Job {
    Job { kind: kind.into(), params, seed: None }
}

#[test]
fn documented_examples() {
    let r = run_job(&job("dwpf_izergin", json!({"lambdas": ["2", "4"], "ws": ["0", "1"]}))).unwrap();
    assert_eq!(r.result, json!("2/3"));
    let r = run_job(&job("weight_f", json!({"l": "1", "m": "0"}))).unwrap();
    assert_eq!(r.result, json!("2"));
    let r = run_job(&job("z_su3_sum", json!({"lambdas": ["2"], "mus": ["0"], "ws": ["1"], "vs": ["3"]}))).unwrap();
    assert_eq!(r.result, json!("-1/3"));
    assert!(r.all_passed());
    assert_eq!(r.schema, "1");
}

#[test]
fn every_listed_kind_is_dispatched() {
    for kind in bethe_cli::ops::KINDS {
        // empty params must fail on the schema, never on the kind
        let err = run_job(&job(kind, json!({}))).unwrap_err();
        assert!(matches!(err, CliError::Schema(_)), "{kind}: {err}");
    }
}

#[test]
fn input_errors() {
    assert_eq!(run_job(&job("nope", json!({}))).unwrap_err(), CliError::UnknownKind("nope".into()));
    let e = run_job(&job("weight_f", json!({"l": "1", "m": "0", "extra": 1}))).unwrap_err();
    assert_eq!(e.name(), "SchemaError");
    let e = run_job(&job("weight_f", json!({"l": "1", "m": "1"}))).unwrap_err();
    assert_eq!(e.name(), "PoleAtPoint");
    assert!(parse_job(r#"{"kind": "weight_f", "bogus": 1}"#).is_err());
    assert_eq!(run_suite("nope", 0).unwrap_err(), CliError::UnknownSuite("nope".into()));
}

#[test]
fn rationals_round_trip_through_reports() {
    for (p, q) in [(0, 1), (-7, 3), (22, 6), (1, 1_000_000_007)] {
        let x = Rat::new(p, q);
        let back: Rat = serde_json::from_value(serde_json::to_value(&x).unwrap()).unwrap();
        assert_eq!(back, x);
    }
}

#[test]
fn failed_checks_record_both_sides() {
    let r = run_job(&job("staggered_double_limit", json!({
        "order": "LAMBDA_THEN_MU", "mu_c": ["5"], "lambda_c": ["1/2"],
        "r1": {"constant_table": {"1/2": "3"}}, "r2": {"constant_table": {"5": "-2"}}, "sizes": [1, 1]
    })))
    .unwrap();
    assert!(r.all_passed());
    for c in r.checks.iter().filter(|c| c.status == Status::Fail) {
        assert_ne!(c.lhs, c.rhs);
    }
}

fn bethe(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bethe"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn binary_exit_codes() {
    let (code, v) = bethe(&["--job", "-"], r#"{"kind":"weight_g","params":{"l":"3","m":"1"}}"#);
    assert_eq!((code, v["result"].clone()), (0, json!("1/2")));
    let (code, v) = bethe(&["--job", "-"], r#"{"kind":"weight_g"}"#);
    assert_eq!((code, v["error"]["name"].clone()), (2, json!("SchemaError")));
    let (code, v) = bethe(&["--suite", "bogus"], "");
    assert_eq!((code, v["error"]["name"].clone()), (2, json!("UnknownSuite")));
    let (code, v) = bethe(&["--suite", "staggered", "--seed", "3", "--threads", "2"], "");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["failed"], json!(0));
}

#[test]
fn report_file_output() {
    let path = std::env::temp_dir().join(format!("bethe-report-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _) = {
        let mut child = Command::new(env!("CARGO_BIN_EXE_bethe"))
            .args(["--suite", "theorem1", "--seed", "7", "--out", p])
            .stdout(Stdio::null())
            .spawn()
            .unwrap();
        (child.wait().unwrap().code().unwrap(), ())
    };
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["job"], json!({"suite": "theorem1", "seed": 7}));
    assert_eq!(v["result"]["notes"].as_array().unwrap().len(), 1);
}
