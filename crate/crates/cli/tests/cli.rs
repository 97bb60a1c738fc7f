use std::process::{Command, Output};

use serde_json::Value;
use twisted_periods::characters::DirichletCharacter;
use twisted_periods::eigenforms::FIXTURE_JSON;
use twisted_periods::period_formula::{theorem1_polynomial, PeriodContext};
use twisted_periods::{ExactNumber, ExactPolynomial};

fn twp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twp")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = twp(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

const EXAMPLE_TRACE: [&str; 11] =
    ["trace", "--level", "1", "--weight", "12", "--character", "kronecker:-3", "--m", "1", "--n", "1"];

#[test]
fn trace_text() {
    let out = twp(&EXAMPLE_TRACE);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-(2^18*3^2/5)*sqrt(3)");
    let via: Vec<&str> = EXAMPLE_TRACE.iter().copied().chain(["--via", "theorem1"]).collect();
    assert_eq!(stdout(&twp(&via)), stdout(&out));
}

#[test]
fn theorem1_json_round_trips() {
    let args = ["theorem1", "--level", "1", "--weight", "12", "--n", "1", "--character", "kronecker:-3"];
    let v = json(&args);
    let p: ExactPolynomial = serde_json::from_value(v["polynomial"].clone()).unwrap();
    let ctx = PeriodContext::new(1, 10, 1, DirichletCharacter::kronecker(-3).unwrap()).unwrap();
    assert_eq!(p, theorem1_polynomial(&ctx).unwrap());
    assert_eq!(serde_json::to_value(&p).unwrap(), v["polynomial"]);
    let oracle: Vec<&str> = args.iter().copied().chain(["--oracle", "--format", "json"]).collect();
    let w: Value = serde_json::from_str(&stdout(&twp(&oracle))).unwrap();
    assert_eq!(w["polynomial"], v["polynomial"]);
}

#[test]
fn period_and_trace_json() {
    let v = json(&["theorem1", "--weight", "12", "--n", "1", "--character", "kronecker:-3", "--m", "5"]);
    let r: ExactNumber = serde_json::from_value(v["period"]["exact"].clone()).unwrap();
    assert!(r.is_zero());
    let t = json(&EXAMPLE_TRACE);
    let x: ExactNumber = serde_json::from_value(t["trace"]["exact"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&x).unwrap(), t["trace"]["exact"]);
    assert_eq!(t["trace"]["surd"], Value::String("0 - 2359296/5*sqrt(3)".into()));
}

#[test]
fn output_is_deterministic() {
    for args in [&EXAMPLE_TRACE[..], &["eigen", "--fixture", "level2-weight16-hecke3", "--format", "json"][..]] {
        assert_eq!(twp(args).stdout, twp(args).stdout);
    }
}

#[test]
fn crosscheck_grids() {
    let quick = twp(&["crosscheck", "--grid", "quick"]);
    assert!(quick.status.success());
    assert!(stdout(&quick).starts_with("ALL EQUAL"));
    let full = json(&["crosscheck", "--grid", "default"]);
    assert_eq!(full["all_equal"], Value::Bool(true));
    assert_eq!(full["contexts"], Value::from(1716));
}

#[test]
fn eigen_and_ratio() {
    let e = stdout(&twp(&["eigen", "--fixture", "level2-weight16-hecke3"]));
    assert!(e.contains("eigenvalue 6252 (multiplicity 1): 7*R_2 + 110*R_4 + 168*R_6"));
    let r = json(&[
        "ratio", "--fixture", "level1-weight24-even", "--character", "kronecker:5", "--m1", "5", "--m2", "7",
    ]);
    assert_eq!(r["ratio"]["radicand"], Value::from(144169));
    let a: ExactNumber = serde_json::from_value(r["ratio"]["rational"].clone()).unwrap();
    let b: ExactNumber = serde_json::from_value(r["conjugate"]["rational"].clone()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn numeric_checks_pass() {
    for check in ["lambda", "petersson", "twisted", "trace"] {
        let v = json(&["verify-numeric", "--check", check]);
        assert_eq!(v["pass"], Value::Bool(true), "{check}: {v}");
    }
    let v = json(&["verify-numeric", "--check", "trace", "--m", "5"]);
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn exit_codes() {
    // parity failure is a computation error
    let out = twp(&["trace", "--weight", "12", "--character", "kronecker:-3", "--m", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parity"));
    let zero = twp(&["ratio", "--fixture", "level2-weight16-even", "--character", "kronecker:13", "--m1", "5", "--m2", "7"]);
    assert_eq!(zero.status.code(), Some(1));
    // invalid input
    assert_eq!(twp(&["trace", "--weight", "12", "--character", "kronecker:6", "--m", "1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(twp(&["trace", "--weight", "12", "--character", "kronecker:-3", "--m", "1", "--n", "11"]).status.code(), Some(2));
    assert_eq!(twp(&["eigen", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(twp(&["trace", "--weight", "12"]).status.code(), Some(2));
    assert_eq!(twp(&["verify-numeric", "--check", "twisted", "--m", "7"]).status.code(), Some(2));
}

#[test]
fn fixtures_dump() {
    let listed = stdout(&twp(&["fixtures"]));
    assert!(listed.contains("level2-weight16-central"));
    assert_eq!(stdout(&twp(&["fixtures", "--dump"])).trim_end(), FIXTURE_JSON.trim_end());
    let path = std::env::temp_dir().join(format!("twp-fixtures-{}.json", std::process::id()));
    let out = twp(&["fixtures", "--dump", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), FIXTURE_JSON);
    std::fs::remove_file(path).unwrap();
}
