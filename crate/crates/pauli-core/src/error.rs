//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by constructors and operations.
///
/// Numerical routines in this crate validate their inputs eagerly: a value
/// that would silently poison a downstream tolerance check (a non-orthonormal
/// frame, a non-positive-definite quadratic form, a profile row of the wrong
/// length) is rejected at the boundary instead.
#[derive(Debug, Error)]
pub enum PauliError {
    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation that divides by a vector norm received the zero vector.
    #[error("operation undefined for the zero vector")]
    ZeroVector,

    /// A structural parameter (dimension, grid size, index) is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A frame matrix failed the orthonormality test.
    #[error("frame '{label}' is not orthonormal: max |E^H E - I| entry = {max_dev:.3e}")]
    NotOrthonormal { label: String, max_dev: f64 },

    /// A modulus argument that must be an odd prime is not.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    /// A symmetric matrix that must be positive definite is not.
    #[error("matrix is not positive definite: smallest eigenvalue = {eigenvalue:.6e}")]
    NotPositiveDefinite { eigenvalue: f64 },

    /// A matrix that must be symmetric (or orthogonal) within tolerance is not.
    #[error("matrix constraint violated: {0}")]
    MatrixConstraint(String),

    /// A matrix inversion hit a (numerically) singular input.
    #[error("matrix is singular or too ill-conditioned to invert")]
    SingularMatrix,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, PauliError>;
