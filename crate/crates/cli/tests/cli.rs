use std::process::{Command, Output};

use serde_json::Value;

fn qline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qline")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn suite_report_json_fields() {
    let out = qline(&["--format", "json", "--seed", "7", "suite", "run", "prop1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["suite"], "prop1");
    assert_eq!(r["seed"], 7);
    assert_eq!(r["version"], 1);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(c["anchor"].is_string() && c["id"].is_string() && c["wall_ms"].is_number());
    }
}

#[test]
fn unknown_suite_is_an_error() {
    let out = qline(&["suite", "run", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn juxtaposition_reports_position() {
    let out = qline(&["pointalg", "nf", "--expr", "v2 v1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:4"));
}

#[test]
fn dimension_with_ones_preset() {
    let out = qline(&["--format", "json", "suite", "run", "theorem4-dim", "--lambda", "ones", "--n", "3", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["checks"][0]["residue"], "dimension 10");
}

#[test]
fn dimension_from_config_file() {
    let path = std::env::temp_dir().join(format!("qline-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"points":[1,2,3],"lambda":{"1,2":"2","1,3":"7/5","2,3":"3"}}"#).unwrap();
    let out = qline(&["--format", "json", "pointalg", "dim", "--lambda", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["dimension"], "10");
    assert_eq!(r["pbw_eligible"], "true");
}

#[test]
fn point_normal_form() {
    let out = qline(&["--format", "json", "pointalg", "nf", "--expr", "v2*v1 - q^2*v1*v2 - (1-q^2)*v1^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["normal_form"], "0");
}

#[test]
fn coordinate_normal_form() {
    let out = qline(&["--format", "json", "bmu", "nf", "--expr", "y2*y1 - q^2*y1*y2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["normal_form"], "0");
}

#[test]
fn pair_invariant_is_invariant() {
    let out = qline(&["--algebra", "coordinates", "uq", "invariant", "--expr", "s^-1*x1*y3 - s*y1*x3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn non_invariant_exits_nonzero() {
    let out = qline(&["--algebra", "coordinates", "uq", "invariant", "--expr", "x1*y2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cross_value_of_reversed_quadruple() {
    let out = qline(&["--format", "json", "cross", "value", "--perm", "ijlk"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["value"], "-C[1,2,3,4] + 1");
}

#[test]
fn probe_below_classical_fails() {
    let out = qline(&["bmu", "probe", "--mu1", "2*q", "--mu2", "q", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn poisson_verify_example() {
    let out = qline(&["--format", "json", "poisson", "verify", "--example", "1", "--points", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"].as_array().unwrap().len(), 1);
}
