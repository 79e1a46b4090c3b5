//! Command-line plumbing: input parsing, method dispatch, verification
//! campaigns, polynomial table checks and benchmarks. The binary is a thin
//! wrapper around these functions.

pub mod bench;
pub mod compute;
pub mod input;
pub mod verify;

use std::str::FromStr;

use serde::Serialize;

pub use bench::{run_bench, BenchReport};
pub use compute::{evaluate, run_compute, ComputeError, DetResult, DetValue, Method, ScalarMode};
pub use input::{parse_spec, InputError};
pub use verify::{run_verify, VerifyConfig, VerifyReport};

use crate::error::{DetError, Result};
use crate::poly::{reference_pn, verify_pn};

/// Environment variable capping verification parallelism.
pub const THREADS_ENV: &str = "PENTADET_THREADS";

/// Which table entries `poly` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolySelection {
    All,
    One(usize),
}

impl FromStr for PolySelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(PolySelection::All);
        }
        s.parse().map(PolySelection::One).map_err(|_| format!("expected 3..9 or 'all', got '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyComparison {
    pub n: usize,
    pub equal: bool,
    /// Canonical text of `regenerated - reference`; `"0"` when equal.
    pub diff: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyReport {
    pub comparisons: Vec<PolyComparison>,
    pub all_equal: bool,
}

/// Regenerates the selected `p_n` symbolically and compares each with its
/// stored table. Orders outside `3..=9` are a [`DetError::Range`].
pub fn run_poly(selection: PolySelection, emit: bool) -> Result<PolyReport> {
    let orders: Vec<usize> = match selection {
        PolySelection::All => (3..=9).collect(),
        PolySelection::One(n) if (3..=9).contains(&n) => vec![n],
        PolySelection::One(n) => return Err(DetError::Range(format!("polynomial tables cover n = 3..9, got {n}"))),
    };
    let mut comparisons = Vec::with_capacity(orders.len());
    for n in orders {
        let report = verify_pn(n)?;
        comparisons.push(PolyComparison {
            n,
            equal: report.equal,
            diff: report.diff.to_string(),
            polynomial: if emit { Some(reference_pn(n)?.to_string()) } else { None },
        });
    }
    let all_equal = comparisons.iter().all(|c| c.equal);
    Ok(PolyReport { comparisons, all_equal })
}
