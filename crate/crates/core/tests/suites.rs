use qline_core::report::{Report, Status, REPORT_VERSION};
use qline_core::suites::{lambda_preset, run_suite, SuiteConfig, SuiteError};

fn statuses(r: &Report) -> Vec<(String, Status, Option<String>)> {
    r.checks.iter().map(|c| (c.id.clone(), c.status, c.residue.clone())).collect()
}

#[test]
fn reports_are_deterministic_and_versioned() {
    let cfg = SuiteConfig::new(99);
    let a = run_suite("poisson-examples", &cfg).unwrap();
    let b = run_suite("poisson-examples", &cfg).unwrap();
    assert_eq!(statuses(&a), statuses(&b));
    assert_eq!((a.seed, a.version), (99, REPORT_VERSION));
    let back = Report::from_json(&a.to_json()).unwrap();
    assert_eq!(statuses(&back), statuses(&a));
}

#[test]
fn configured_dimension_run() {
    let mut cfg = SuiteConfig::new(1);
    cfg.lambda = Some(lambda_preset("ones", 3).unwrap());
    cfg.degree = Some(3);
    let r = run_suite("theorem4-dim", &cfg).unwrap();
    assert!(r.passed());
    assert_eq!(r.checks[0].residue.as_deref(), Some("dimension 10"));
}

#[test]
fn configured_three_point_run() {
    let mut cfg = SuiteConfig::new(1);
    cfg.lambda = Some(lambda_preset("coth:2,3", 3).unwrap());
    assert!(run_suite("three-point", &cfg).unwrap().passed());
}

#[test]
fn unknown_suite() {
    assert!(matches!(run_suite("lemma99", &SuiteConfig::new(1)), Err(SuiteError::UnknownSuite(_))));
}
