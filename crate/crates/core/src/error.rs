use thiserror::Error;

/// Errors raised by the geometric and dynamical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero divisor: |norm_sq| = {0:e} is below the null tolerance")]
    NullDivisor(f64),

    #[error("not a unit split quaternion: norm_sq = {0}")]
    NotUnit(f64),

    #[error("matrix is not in Sp(n, B): max |A conj(A)^T - Id| = {0:e}")]
    NotSymplectic(f64),

    #[error("point is not spacelike: metric = {0:e}")]
    NotSpacelike(f64),

    #[error("point is not on the unit pseudo-sphere: metric = {0}")]
    NotOnSphere(f64),

    #[error("direction is null: norm_sq = {0:e}")]
    NullDirection(f64),

    #[error("integration produced non-finite values at step {step}")]
    IntegrationBlowup { step: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid Lie algebra definition: {0}")]
    InvalidAlgebra(String),

    #[error("horizontal basis is degenerate: rank {rank}, expected {expected}")]
    DegenerateBasis { rank: usize, expected: usize },

    #[error("sign-table calibration selected {passed} tables, expected exactly one")]
    Calibration { passed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
