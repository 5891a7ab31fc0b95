//! Exact equivariant cohomology of `Z^n`-actions.
//!
//! Given the action of `n` commuting automorphisms on the real cohomology of a
//! closed manifold, this crate computes the Borel equivariant cohomology in
//! two independent ways: by iterating the mapping-torus splitting one circle
//! factor at a time ([`mapping_torus`]), and by summing group cohomology of
//! each graded piece computed with a Koszul complex ([`koszul`]).
//!
//! All algorithms are generic over an exact [`Scalar`]; the aliases below fix
//! the scalar to arbitrary-precision rationals.

pub mod cli;
pub mod document;
pub mod flag;
pub mod fuchsian;
pub mod graded_rep;
pub mod koszul;
pub mod linalg;
pub mod mapping_torus;
pub mod report;
pub mod scalar;

pub use scalar::Scalar;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

pub type QMatrix = linalg::Matrix<Rational>;
pub type QSubspace = linalg::Subspace<Rational>;
pub type QQuotientSpace = linalg::QuotientSpace<Rational>;
pub type QGradedRep = graded_rep::GradedRep<Rational>;
