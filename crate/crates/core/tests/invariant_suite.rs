use renyi_moments::verify::{run_invariant_suite, Fault, Status, SuiteConfig};

#[test]
fn full_suite_passes_within_budget() {
    let report = run_invariant_suite(&SuiteConfig { quick: false, fault: None });
    assert!(report.passed, "{report}");
    assert!(report.runtime_ms < 60_000.0);
    assert!(report.checks.iter().any(|c| c.status == Status::Info));
}

#[test]
fn quick_suite_is_fast() {
    let report = run_invariant_suite(&SuiteConfig { quick: true, fault: None });
    assert!(report.passed, "{report}");
    assert!(report.runtime_ms < 5_000.0);
}

#[test]
fn corrupted_moment_branch_fails_the_suite() {
    let report = run_invariant_suite(&SuiteConfig { quick: false, fault: Some(Fault::CorruptedM) });
    assert!(!report.passed);
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"m_monotone_in_lambda"), "{failed:?}");
    assert!(failed.contains(&"conjugation_curve_maximality"), "{failed:?}");
}

#[test]
fn report_renders_one_line_per_check() {
    let report = run_invariant_suite(&SuiteConfig { quick: true, fault: None });
    let text = report.to_string();
    assert!(text.lines().count() == report.checks.len() + 1);
    assert!(text.starts_with("PASS") || text.starts_with("INFO"));
}
