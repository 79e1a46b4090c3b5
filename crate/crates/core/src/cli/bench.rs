//! Wall-time comparison of the structured float routes against the dense one.

use std::time::Instant;

use serde::Serialize;

use crate::decomposition::logdet_via_blocks;
use crate::error::Result;
use crate::model::{assemble_dense, BandParams, ToeplitzSpec};
use crate::oracle::det_float_dense;
use crate::reduction::iterate_diagonals;
use crate::scalar::LogDet;
use crate::toeplitz::logdet_toeplitz;

pub const BENCH_ORDERS: [usize; 3] = [1_000, 10_000, 100_000];
pub const DENSE_ORDER: usize = 500;
const BENCH_K: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchEntry {
    pub order: usize,
    pub route: &'static str,
    pub seconds: f64,
    pub sign: i8,
    pub log_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub k: usize,
    pub entries: Vec<BenchEntry>,
    pub dense_order: usize,
    pub dense_seconds: f64,
    /// Fastest structured route at `dense_order`.
    pub structured_seconds: f64,
    pub speedup: f64,
}

/// Toeplitz spec of the given order with `d = 4` and unit off-diagonals.
pub fn bench_spec(order: usize) -> ToeplitzSpec<f64> {
    ToeplitzSpec::new(order - 1, BENCH_K, BandParams::new(1.0, 1.0, 4.0, 1.0, 1.0)).expect("valid bench shape")
}

/// Best of `reps` runs.
fn time_best(reps: usize, mut f: impl FnMut() -> Result<LogDet>) -> Result<(f64, LogDet)> {
    let mut best = f64::INFINITY;
    let mut value = LogDet::ZERO;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        value = f()?;
        best = best.min(start.elapsed().as_secs_f64());
    }
    Ok((best, value))
}

fn structured_routes(order: usize, reps: usize) -> Result<Vec<BenchEntry>> {
    let spec = bench_spec(order);
    let general = spec.to_general()?;
    let mut out = Vec::new();
    let routes: [(&'static str, &dyn Fn() -> Result<LogDet>); 3] = [
        ("toeplitz", &|| logdet_toeplitz(&spec)),
        ("reduce", &|| Ok(LogDet::product_f64(iterate_diagonals(&general)?))),
        ("blocks", &|| logdet_via_blocks(&general)),
    ];
    for (route, f) in routes {
        let (seconds, v) = time_best(reps, f)?;
        out.push(BenchEntry { order, route, seconds, sign: v.sign, log_abs: v.log_abs });
    }
    Ok(out)
}

pub fn run_bench() -> Result<BenchReport> {
    let mut entries = Vec::new();
    for order in BENCH_ORDERS {
        entries.extend(structured_routes(order, 3)?);
    }
    let small = structured_routes(DENSE_ORDER, 20)?;
    let structured_seconds = small.iter().map(|e| e.seconds).fold(f64::INFINITY, f64::min);
    let dense = assemble_dense(&bench_spec(DENSE_ORDER).to_general()?)?;
    let (dense_seconds, v) = time_best(1, || Ok(det_float_dense(&dense)))?;
    entries.extend(small);
    entries.push(BenchEntry {
        order: DENSE_ORDER,
        route: "dense",
        seconds: dense_seconds,
        sign: v.sign,
        log_abs: v.log_abs,
    });
    Ok(BenchReport {
        k: BENCH_K,
        entries,
        dense_order: DENSE_ORDER,
        dense_seconds,
        structured_seconds,
        speedup: dense_seconds / structured_seconds.max(1e-9),
    })
}
