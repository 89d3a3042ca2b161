use flagchern::chern::Oracle;
use flagchern::suite::{run, run_criterion, title, SuiteOptions, CRITERIA};

#[test]
fn fast_criteria_pass() {
    let opts = SuiteOptions::default();
    let report = run(&opts, &[7, 8, 10]);
    assert_eq!(report.results.len(), 3);
    for r in &report.results {
        assert!(r.passed, "{}\n{}", r.line(), r.details.join("\n"));
        assert!(r.line().starts_with("PASS criterion"));
    }
}

#[test]
fn dual_oracle_criterion_needs_both_oracles() {
    let opts = SuiteOptions { oracle: Oracle::Weyl, ..SuiteOptions::default() };
    let r = run_criterion(9, &opts);
    assert!(!r.passed);
    assert!(r.summary.contains("oracle weyl"));
}

#[test]
fn unknown_criterion_fails() {
    let r = run_criterion(CRITERIA + 1, &SuiteOptions::default());
    assert!(!r.passed);
    assert_eq!(title(CRITERIA + 1), "unknown criterion");
}

#[test]
fn selection_is_sorted_and_deduplicated() {
    let report = run(&SuiteOptions::default(), &[8, 7, 8]);
    let numbers: Vec<u8> = report.results.iter().map(|r| r.number).collect();
    assert_eq!(numbers, vec![7, 8]);
    let json = report.to_json();
    assert_eq!(json["criteria"].as_array().unwrap().len(), 2);
}
