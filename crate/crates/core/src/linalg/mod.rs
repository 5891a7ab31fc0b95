//! Exact linear algebra: echelon forms, kernels, images, quotients and the
//! maps they induce.
//!
//! Subspaces are always stored in reduced column-echelon form, so two
//! subspaces are equal as sets exactly when their stored bases are equal.

mod echelon;
mod matrix;
mod subspace;

pub use echelon::{image_basis, kernel_basis, rank, rref, Rref};
pub use matrix::Matrix;
pub use subspace::{
    commute_check, induced_on_quotient, restrict_to_subspace, QuotientSpace, Subspace,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
}
