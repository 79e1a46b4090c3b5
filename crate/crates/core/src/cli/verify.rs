//! Randomized cross-route verification campaign.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::input::spec_to_value;
use crate::decomposition::{det_via_blocks, BlockMethod};
use crate::error::DetError;
use crate::model::{
    assemble_dense, lower_to_general, BandParams, ImperfectSpec, PentaSpec, StructuredSpec, ToeplitzSpec,
};
use crate::oracle::det_exact_dense;
use crate::poly::det_via_reference_tables;
use crate::reduction::{det_q3_general, det_q3_general_with_flipped_term, det_short_band, det_via_reduction};
use crate::scalar::{format_rational, Rational, Scalar};
use crate::toeplitz;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub cases: usize,
    pub seed: u64,
    /// Worker threads; `None` lets the pool decide.
    pub threads: Option<usize>,
    /// Flip one sign inside the q = 3 closed form (negative control).
    pub inject_bug: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub spec: Value,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub cases: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    /// Number of cases in which each route was evaluated.
    pub route_checks: BTreeMap<String, usize>,
    /// Cases where the elimination route met a zero pivot and was skipped.
    pub pivot_zero_skips: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn all_agree(&self) -> bool {
        self.failed == 0
    }
}

/// Draws a random spec with entries in `-3..=3`; `n` is uniform in `2..=n_max`
/// and `k` uniform among the valid offsets for that `n`. Seven in ten specs are
/// general, the rest Toeplitz or imperfect Toeplitz.
pub fn random_spec(rng: &mut impl Rng, n_max: usize) -> StructuredSpec<Rational> {
    let n = rng.gen_range(2..=n_max.max(2));
    let k = rng.gen_range(1..=n / 2);
    let kind = rng.gen_range(0..10);
    let mut entry = || Rational::from_i64(rng.gen_range(-3..=3));
    let order = n + 1;
    match kind {
        0..=6 => {
            let mut vec = |len: usize| (0..len).map(|_| entry()).collect::<Vec<_>>();
            let far_lower = vec(order - 2 * k);
            let near_lower = vec(order - k);
            let diag = vec(order);
            let near_upper = vec(order - k);
            let far_upper = vec(order - 2 * k);
            StructuredSpec::General(
                PentaSpec::new(n, k, far_lower, near_lower, diag, near_upper, far_upper).expect("valid shape"),
            )
        }
        _ => {
            let params = BandParams::new(entry(), entry(), entry(), entry(), entry());
            let base = ToeplitzSpec::new(n, k, params).expect("valid shape");
            if kind <= 8 {
                StructuredSpec::Toeplitz(base)
            } else {
                let (alpha, beta) = (entry(), entry());
                StructuredSpec::Imperfect(ImperfectSpec::new(base, alpha, beta).expect("valid shape"))
            }
        }
    }
}

struct CaseOutcome {
    values: Vec<(&'static str, Rational)>,
    pivot_zero: bool,
}

fn keep(
    values: &mut Vec<(&'static str, Rational)>,
    name: &'static str,
    r: Result<Rational, DetError>,
) -> Result<(), DetError> {
    match r {
        Ok(v) => {
            values.push((name, v));
            Ok(())
        }
        Err(DetError::Hypothesis(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

/// Every route admissible for `spec`, each evaluated exactly.
fn evaluate_routes(spec: &StructuredSpec<Rational>, inject_bug: bool) -> CaseOutcome {
    let general = lower_to_general(spec).expect("generated specs are valid");
    let mut values = vec![
        ("dense", det_exact_dense(&assemble_dense(&general).expect("valid"))),
        ("blocks", det_via_blocks(&general, BlockMethod::DenseExact).expect("total route")),
    ];
    let mut pivot_zero = false;
    match det_via_reduction(&general) {
        Ok(v) => values.push(("reduce", v)),
        Err(DetError::PivotZero { .. }) => pivot_zero = true,
        Err(_) => {}
    }
    let q3 = if inject_bug { det_q3_general_with_flipped_term(&general) } else { det_q3_general(&general) };
    keep(&mut values, "q3", q3).expect("closed forms only fail on hypothesis");
    keep(&mut values, "theorem1", det_short_band(&general)).expect("closed forms only fail on hypothesis");
    match spec {
        StructuredSpec::General(_) => {}
        StructuredSpec::Toeplitz(t) => {
            values
                .push(("blocks_recursion", det_via_blocks(&general, BlockMethod::RecursionIfToeplitz).expect("total")));
            values.push(("toeplitz", toeplitz::det_toeplitz(t).expect("valid")));
            keep(&mut values, "closed_q3", toeplitz::det_q3_toeplitz_closed(t)).expect("hypothesis only");
            keep(&mut values, "reference_tables", det_via_reference_tables(t)).expect("hypothesis only");
        }
        StructuredSpec::Imperfect(i) => {
            values
                .push(("blocks_recursion", det_via_blocks(&general, BlockMethod::RecursionIfToeplitz).expect("total")));
            values.push(("imperfect", toeplitz::det_imperfect(i).expect("valid")));
            keep(&mut values, "closed_q3", toeplitz::det_q3_imperfect_closed(i)).expect("hypothesis only");
        }
    }
    CaseOutcome { values, pivot_zero }
}

/// Samples `cases` specs from `seed`, evaluates every admissible route and
/// checks exact pairwise agreement. Output depends only on the configuration.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport, String> {
    if config.n_max < 2 {
        return Err(format!("n_max must be at least 2, got {}", config.n_max));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let specs: Vec<_> = (0..config.cases).map(|_| random_spec(&mut rng, config.n_max)).collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().map_err(|e| e.to_string())?;
    let outcomes: Vec<CaseOutcome> =
        pool.install(|| specs.par_iter().map(|s| evaluate_routes(s, config.inject_bug)).collect());

    let mut report = VerifyReport {
        n_max: config.n_max,
        cases: config.cases,
        seed: config.seed,
        passed: 0,
        failed: 0,
        route_checks: BTreeMap::new(),
        pivot_zero_skips: 0,
        first_counterexample: None,
    };
    for (idx, (spec, outcome)) in specs.iter().zip(&outcomes).enumerate() {
        for (name, _) in &outcome.values {
            *report.route_checks.entry((*name).to_string()).or_default() += 1;
        }
        report.pivot_zero_skips += usize::from(outcome.pivot_zero);
        let reference = &outcome.values[0].1;
        if outcome.values.iter().all(|(_, v)| v == reference) {
            report.passed += 1;
        } else {
            report.failed += 1;
            if report.first_counterexample.is_none() {
                report.first_counterexample = Some(Counterexample {
                    case: idx,
                    spec: spec_to_value(spec),
                    values: outcome.values.iter().map(|(n, v)| ((*n).to_string(), format_rational(v))).collect(),
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(cases: usize, seed: u64, inject_bug: bool) -> VerifyConfig {
        VerifyConfig { n_max: 14, cases, seed, threads: Some(2), inject_bug }
    }

    #[test]
    fn empty_campaign_passes() {
        let r = run_verify(&config(0, 1, false)).unwrap();
        assert!(r.all_agree());
        assert_eq!(r.passed, 0);
        assert!(r.route_checks.is_empty());
    }

    #[test]
    fn small_campaign_agrees_and_is_deterministic() {
        let a = run_verify(&config(60, 7, false)).unwrap();
        assert!(a.all_agree(), "{:?}", a.first_counterexample);
        let b = run_verify(&VerifyConfig { threads: Some(1), ..config(60, 7, false) }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.route_checks["dense"], 60);
    }

    #[test]
    fn injected_bug_is_detected() {
        let r = run_verify(&config(150, 3, true)).unwrap();
        assert!(!r.all_agree());
        let ce = r.first_counterexample.unwrap();
        assert_ne!(ce.values["q3"], ce.values["dense"]);
    }

    #[test]
    fn rejects_tiny_n_max() {
        assert!(run_verify(&VerifyConfig { n_max: 1, ..config(1, 1, false) }).is_err());
    }
}
