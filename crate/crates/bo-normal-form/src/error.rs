//! Errors of the normal-form evaluators.

use bo_spectral::SpectralError;
use thiserror::Error;

/// Failure of a normal-form evaluation.
#[derive(Debug, Error)]
pub enum NormalFormError {
    /// Precondition failure in the spectral layer (mean, grid mismatch, …).
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    /// Dyadic index below the smallest admissible value.
    #[error("dyadic index {k} is below the minimum {min}")]
    BadIndex {
        /// Requested index.
        k: i64,
        /// Smallest admissible index.
        min: i64,
    },
    /// The operation is not defined for this kind of dyadic variable.
    #[error("operation not supported for the {0} variable")]
    UnsupportedVariable(&'static str),
}

/// Result alias.
pub type Result<T> = std::result::Result<T, NormalFormError>;
