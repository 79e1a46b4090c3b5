//! A small randomized cross-check of every route, with and without a
//! deliberately wrong sign in the q = 3 form.

use pentadet::cli::{run_verify, VerifyConfig};

fn main() {
    let mut config = VerifyConfig { n_max: 16, cases: 100, seed: 7, threads: None, inject_bug: false };
    let report = run_verify(&config).expect("valid config");
    println!("clean: {} passed, {} failed, checks {:?}", report.passed, report.failed, report.route_checks);
    assert!(report.all_agree());

    config.inject_bug = true;
    let report = run_verify(&config).expect("valid config");
    println!("with flipped sign: {} passed, {} failed", report.passed, report.failed);
    if let Some(ce) = &report.first_counterexample {
        println!("first counterexample (case {}): {}", ce.case, serde_json::to_string(&ce.values).unwrap());
    }
    assert!(!report.all_agree());
}
