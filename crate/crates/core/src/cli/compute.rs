//! Method dispatch for a single determinant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::decomposition::{det_via_blocks, logdet_via_blocks, BlockMethod};
use crate::error::DetError;
use crate::model::{assemble_dense, lower_to_general, StructuredSpec};
use crate::oracle::{det_exact_dense, det_float_dense};
use crate::poly::{det_via_reference_tables, reference_pn};
use crate::reduction::{
    det_q3_general, det_short_band, det_via_reduction, iterate_diagonals, q3_factors, short_band_factors,
};
use crate::scalar::{format_rational, rational_to_f64, LogDet, Rational};
use crate::toeplitz::{self, det_imperfect, det_toeplitz};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Auto,
    Dense,
    Reduce,
    ShortBand,
    Q3,
    Blocks,
    Toeplitz,
    Closed,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Auto,
        Method::Dense,
        Method::Reduce,
        Method::ShortBand,
        Method::Q3,
        Method::Blocks,
        Method::Toeplitz,
        Method::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Dense => "dense",
            Method::Reduce => "reduce",
            Method::ShortBand => "theorem1",
            Method::Q3 => "q3",
            Method::Blocks => "blocks",
            Method::Toeplitz => "toeplitz",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown method {s:?}"))
    }
}

impl Serialize for Method {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    Rational,
    Float,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Float => "float",
        }
    }
}

impl FromStr for ScalarMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" => Ok(ScalarMode::Rational),
            "float" => Ok(ScalarMode::Float),
            _ => Err(format!("unknown scalar mode {s:?}")),
        }
    }
}

/// Determinant value in either mode.
#[derive(Debug, Clone, PartialEq)]
pub enum DetValue {
    Exact(Rational),
    Log(LogDet),
}

impl Serialize for DetValue {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        match self {
            DetValue::Exact(v) => s.serialize_str(&format_rational(v)),
            DetValue::Log(ld) => {
                let mut st = s.serialize_struct("LogDet", 2)?;
                st.serialize_field("sign", &ld.sign)?;
                st.serialize_field("log_abs", &if ld.sign == 0 { None } else { Some(ld.log_abs) })?;
                st.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fallback {
    pub from: Method,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetResult {
    pub value: DetValue,
    pub scalar: &'static str,
    pub method_used: Method,
    pub fallbacks_taken: Vec<Fallback>,
    /// Wall time in seconds per attempted method; only present when requested,
    /// so default output stays byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// Errors of a compute run, each mapped to a process exit code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComputeError {
    #[error(transparent)]
    Input(#[from] super::input::InputError),
    #[error("method {method}: {source}")]
    Hypothesis { method: Method, source: DetError },
    #[error("method {method}: zero pivot d_{j} at elimination step {s}")]
    PivotZero { method: Method, j: usize, s: usize },
}

impl ComputeError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ComputeError::Input(_) => 2,
            ComputeError::Hypothesis { .. } => 3,
            ComputeError::PivotZero { .. } => 4,
        }
    }
}

fn not_toeplitz(method: Method) -> DetError {
    DetError::Hypothesis(format!("method {method} needs a toeplitz or imperfect spec"))
}

/// Evaluates one concrete route; `Auto` is not accepted here.
pub fn evaluate(spec: &StructuredSpec<Rational>, method: Method, mode: ScalarMode) -> Result<DetValue, DetError> {
    match mode {
        ScalarMode::Rational => evaluate_exact(spec, method).map(DetValue::Exact),
        ScalarMode::Float => evaluate_float(spec, method).map(DetValue::Log),
    }
}

fn evaluate_exact(spec: &StructuredSpec<Rational>, method: Method) -> Result<Rational, DetError> {
    let general = lower_to_general(spec)?;
    match method {
        Method::Auto => Err(DetError::Hypothesis("auto is a dispatcher, not a route".into())),
        Method::Dense => Ok(det_exact_dense(&assemble_dense(&general)?)),
        Method::Reduce => det_via_reduction(&general),
        Method::ShortBand => det_short_band(&general),
        Method::Q3 => det_q3_general(&general),
        Method::Blocks => {
            let block_method = match spec {
                StructuredSpec::General(_) => BlockMethod::DenseExact,
                _ => BlockMethod::RecursionIfToeplitz,
            };
            det_via_blocks(&general, block_method)
        }
        Method::Toeplitz => match spec {
            StructuredSpec::Toeplitz(t) => det_toeplitz(t),
            StructuredSpec::Imperfect(i) => det_imperfect(i),
            StructuredSpec::General(_) => Err(not_toeplitz(method)),
        },
        Method::Closed => match spec {
            StructuredSpec::Toeplitz(t) if t.shape()?.q == 3 => toeplitz::det_q3_toeplitz_closed(t),
            StructuredSpec::Toeplitz(t) => det_via_reference_tables(t),
            StructuredSpec::Imperfect(i) => toeplitz::det_q3_imperfect_closed(i),
            StructuredSpec::General(_) => Err(not_toeplitz(method)),
        },
    }
}

fn evaluate_float(spec: &StructuredSpec<Rational>, method: Method) -> Result<LogDet, DetError> {
    let spec_f = spec.map(rational_to_f64);
    let general = lower_to_general(&spec_f)?;
    match method {
        Method::Auto => Err(DetError::Hypothesis("auto is a dispatcher, not a route".into())),
        Method::Dense => Ok(det_float_dense(&assemble_dense(&general)?)),
        Method::Reduce => Ok(LogDet::product_f64(iterate_diagonals(&general)?)),
        Method::ShortBand => Ok(LogDet::product_f64(short_band_factors(&general)?)),
        Method::Q3 => Ok(LogDet::product_f64(q3_factors(&general)?)),
        Method::Blocks => logdet_via_blocks(&general),
        Method::Toeplitz => match &spec_f {
            StructuredSpec::Toeplitz(t) => toeplitz::logdet_toeplitz(t),
            StructuredSpec::Imperfect(i) => toeplitz::logdet_imperfect(i),
            StructuredSpec::General(_) => Err(not_toeplitz(method)),
        },
        Method::Closed => {
            let (base, alpha, beta) = match &spec_f {
                StructuredSpec::Toeplitz(t) => (t, 0.0, 0.0),
                StructuredSpec::Imperfect(i) => (&i.base, i.alpha, i.beta),
                StructuredSpec::General(_) => return Err(not_toeplitz(method)),
            };
            let shape = base.shape()?;
            let short_count = base.k - shape.p;
            let (long, short) = if shape.q == 3 {
                toeplitz::q3_closed_factors(&base.params, &alpha, &beta)
            } else if matches!(spec_f, StructuredSpec::Toeplitz(_)) && (4..=8).contains(&shape.q) {
                let eval =
                    |m: usize| -> Result<f64, DetError> { Ok(reference_pn(m)?.eval(&base.params, rational_to_f64)) };
                (eval(shape.q + 1)?, eval(shape.q)?)
            } else {
                return Err(DetError::Hypothesis(format!("no closed form for q={}", shape.q)));
            };
            Ok(LogDet::from_f64(long).powu(shape.p) * LogDet::from_f64(short).powu(short_count))
        }
    }
}

/// The route `auto` picks first for a spec.
pub fn auto_route(spec: &StructuredSpec<Rational>) -> Result<Method, DetError> {
    let shape = spec.shape()?;
    Ok(match spec {
        StructuredSpec::Toeplitz(_) | StructuredSpec::Imperfect(_) => Method::Toeplitz,
        StructuredSpec::General(_) if shape.q == 2 => Method::ShortBand,
        StructuredSpec::General(_) if shape.q == 3 && shape.p == 0 => Method::Q3,
        StructuredSpec::General(_) => Method::Reduce,
    })
}

/// Computes the determinant with `method`, falling back to the block route when
/// `auto` meets a zero pivot.
pub fn run_compute(
    spec: &StructuredSpec<Rational>,
    method: Method,
    mode: ScalarMode,
    with_timings: bool,
) -> Result<DetResult, ComputeError> {
    let mut timings = BTreeMap::new();
    let mut fallbacks = Vec::new();
    let mut timed = |m: Method| {
        let start = Instant::now();
        let out = evaluate(spec, m, mode);
        timings.insert(m.name().to_string(), start.elapsed().as_secs_f64());
        out
    };
    let classify = |m: Method, e: DetError| match e {
        DetError::PivotZero { j, s } => ComputeError::PivotZero { method: m, j, s },
        other => ComputeError::Hypothesis { method: m, source: other },
    };

    let (value, used) = if method == Method::Auto {
        let first = auto_route(spec).map_err(|e| classify(method, e))?;
        match timed(first) {
            Ok(v) => (v, first),
            Err(e @ DetError::PivotZero { .. }) => {
                fallbacks.push(Fallback { from: first, reason: e.to_string() });
                let v = timed(Method::Blocks).map_err(|e| classify(Method::Blocks, e))?;
                (v, Method::Blocks)
            }
            Err(e) => return Err(classify(first, e)),
        }
    } else {
        (timed(method).map_err(|e| classify(method, e))?, method)
    };

    Ok(DetResult {
        value,
        scalar: mode.name(),
        method_used: used,
        fallbacks_taken: fallbacks,
        timings: with_timings.then_some(timings),
    })
}
