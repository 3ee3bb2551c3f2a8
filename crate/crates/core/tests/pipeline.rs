use minfaith_core::suite::{cross_validate, SuiteReport, SuiteSpec};

const SMALL: &str = r#"{
  "version": 1,
  "instances": [
    {"name": "hei-f3", "group": "heis:p=3", "expect": 3},
    {"name": "q8", "group": "q8", "expect": 2},
    {"name": "aff-z4", "group": "aff:p=2,n=2", "expect": 2},
    {"name": "gl2-f3", "group": "gl2:p=3", "expect": 2}
  ]
}"#;

#[test]
fn small_suite_agrees_and_round_trips() {
    let spec = SuiteSpec::from_json(SMALL).unwrap();
    let report = cross_validate(&spec, 4096);
    assert!(report.all_match(), "{}", report.to_human());
    let json = serde_json::to_string(&report).unwrap();
    let back: SuiteReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    let csv = report.to_csv();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn cap_skips_oracle_without_failing() {
    let spec =
        SuiteSpec::from_json(r#"{"version":1,"instances":[{"name":"h","group":"heis:p=3,k=2","expect":9}]}"#).unwrap();
    let report = cross_validate(&spec, 100);
    let r = &report.instances[0];
    assert!(r.ok(), "{r:?}");
    assert_eq!(r.oracle, None);
    assert_eq!(r.formula, Some(9));
    assert!(r.notes.iter().any(|n| n.contains("above cap")));
}

#[test]
fn malformed_suites_are_rejected() {
    assert!(SuiteSpec::from_json("not json").is_err());
    assert!(SuiteSpec::from_json(r#"{"version":1,"instances":[{"name":"x","group":"heis:p=3,bogus=1"}]}"#).is_err());
}
