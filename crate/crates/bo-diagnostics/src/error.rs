//! Errors of the diagnostics.

use bo_evolution::EvolutionError;
use bo_spectral::SpectralError;
use thiserror::Error;

/// Failure of a diagnostic.
#[derive(Debug, Error)]
pub enum DiagnosticsError {
    /// Failure in the spectral layer.
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    /// Failure while evolving or handling a trajectory.
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    /// The diagnostic is undefined for the zero field.
    #[error("the field is identically zero")]
    ZeroField,
    /// The two inputs are not frequency separated as declared.
    #[error("frequency separation {found} is below the required {required}")]
    NotSeparated {
        /// Measured distance between the `|ξ|` supports.
        found: f64,
        /// Required distance.
        required: f64,
    },
    /// Invalid argument (empty lists, mismatched trajectories, …).
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

/// Result alias.
pub type Result<T> = std::result::Result<T, DiagnosticsError>;
