//! Determinants of k,2k-pentadiagonal matrices.
//!
//! A k,2k-pentadiagonal matrix of order `n+1` has nonzero entries only on the
//! main diagonal and on the sub/superdiagonals at offsets `k` and `2k`. This
//! crate computes its determinant by several independent routes:
//!
//! - [`reduction`]: band elimination on the diagonal vectors (`O(n)`), plus
//!   closed forms for `q = 2` and `q = 3` where `n+1 = kq + p`;
//! - [`decomposition`]: a stride-k permutation similarity into `k` small
//!   1,2-pentadiagonal blocks;
//! - [`toeplitz`]: the seven-term recursion for constant diagonals, with an
//!   edge-perturbed ("imperfect") variant;
//! - [`poly`]: symbolic regeneration of the Toeplitz block determinants;
//! - [`oracle`]: dense exact and floating-point determinants for
//!   cross-checking.
//!
//! Every route is generic over [`Scalar`], instantiated for exact
//! [`Rational`]s and `f64`.

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod reduction;
pub mod scalar;
pub mod toeplitz;

pub use decomposition::{det_via_blocks, sigma, split_blocks, BlockMethod, BlockSet};
pub use error::{DetError, Result};
pub use model::{
    assemble_dense, lower_to_general, validate_shape, BandParams, DenseMatrix, ImperfectSpec, PentaSpec, Shape,
    StructuredSpec, ToeplitzSpec,
};
pub use oracle::{det_exact_dense, det_float_dense};
pub use reduction::{det_q3_general, det_short_band, det_via_reduction, iterate_diagonals};
pub use scalar::{LogDet, Rational, Scalar};
pub use toeplitz::{det_imperfect, det_toeplitz};
