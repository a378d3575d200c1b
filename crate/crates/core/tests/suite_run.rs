use degen_core::rational::{rat, ratio};
use degen_core::suite::{registry, run_suite, Context, SuiteConfig};

#[test]
fn full_suite_passes_symbolically_and_specialized() {
    let config = SuiteConfig {
        lambda_specializations: vec![rat(1), rat(-1), ratio(1, 2), rat(2), rat(0)],
        include_optional: true,
        ..SuiteConfig::default()
    };
    let results = run_suite(&config).unwrap();
    assert_eq!(results.len(), registry().len() * 6);
    let failures: Vec<_> = results.iter().filter(|r| !r.passed()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn every_identity_compares_something() {
    let ctx = Context::new(6);
    for identity in registry() {
        let comparisons = identity.comparisons(&ctx).unwrap();
        assert!(!comparisons.is_empty(), "{} is vacuous", identity.id);
    }
}

#[test]
fn results_are_deterministic() {
    let config = SuiteConfig {
        order: 6,
        lambda_specializations: vec![ratio(-1, 3)],
        ..SuiteConfig::default()
    };
    let a = serde_json::to_string(&run_suite(&config).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(&config).unwrap()).unwrap();
    assert_eq!(a, b);
}
