use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian within tolerance (asymmetry {asymmetry:.3e})")]
    NonHermitian { asymmetry: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    NoConvergence { off_diagonal: f64, sweeps: usize },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.6e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("matrix is numerically singular (smallest singular value {sigma_min:.3e})")]
    Singular { sigma_min: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sequence has {available} terms but {needed} are required")]
    SequenceTooShort { needed: usize, available: usize },

    #[error("invalid sequence spec `{spec}`: {reason}")]
    InvalidSequence { spec: String, reason: String },

    #[error("operation requires a real-valued sequence")]
    NotReal,

    #[error("sequence must be real and strictly increasing from zero; first violation at index {index}")]
    OrderingViolation { index: usize },

    #[error("vector has coefficient mass {mass:.3e} outside the interior span")]
    OutsideInterior { mass: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
