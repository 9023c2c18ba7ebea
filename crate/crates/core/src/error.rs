//! Error type shared by every module of the crate.

use crate::schurhorn::ConstructionReport;

/// Errors produced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Incompatible or invalid dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A matrix that must be positive definite is not.
    #[error("definiteness error: {0}")]
    Definiteness(String),

    /// An input vector violates a required relation; `index` is the
    /// 1-based prefix length (or coordinate) at which the violation
    /// was detected.
    #[error("constraint error at index {index}: {message}")]
    Constraint { index: usize, message: String },

    /// An iterative kernel failed to converge or a computed result
    /// failed its residual check.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A scalar argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructed matrix failed post-verification; the measured
    /// report is attached.
    #[error("verification failed: {message}")]
    Verification {
        message: String,
        report: Box<ConstructionReport>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
