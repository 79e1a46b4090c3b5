use thiserror::Error;

/// Failures shared by every determinant route.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    /// Band offset out of range or a diagonal of the wrong length.
    #[error("shape error: {0}")]
    Shape(String),

    /// A route's own hypothesis on (q, p) is not met.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    /// Elimination would divide by a zero pivot `d_j` during step `s` (1-based).
    #[error("zero pivot d_{j} at elimination step {s}")]
    PivotZero { j: usize, s: usize },

    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },

    #[error("{0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, DetError>;
