//! Errors of a scenario run and their exit codes.

use std::path::Path;

use bo_evolution::EvolutionError;

use crate::config::ConfigError;

/// Exit code of a successful run with every check passing.
pub const EXIT_OK: i32 = 0;
/// Exit code when the run completed but a check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code of an invalid configuration or command line.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code of a runtime failure (divergence, I/O, numerical precondition).
pub const EXIT_RUNTIME: i32 = 3;

/// Why a scenario could not complete.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// The configuration is invalid for the requested subcommand.
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// Offending path.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
    /// Writing a CSV file failed.
    #[error("{0}: {1}")]
    Csv(String, csv::Error),
    /// Serializing JSON failed.
    #[error("json: {0}")]
    Json(serde_json::Error),
    /// A spectral precondition failed.
    #[error(transparent)]
    Spectral(#[from] bo_spectral::SpectralError),
    /// Time stepping failed.
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    /// A normal-form evaluation failed.
    #[error(transparent)]
    NormalForm(#[from] bo_normal_form::NormalFormError),
    /// A diagnostic failed.
    #[error(transparent)]
    Diagnostics(#[from] bo_diagnostics::DiagnosticsError),
    /// Input data is unusable.
    #[error("{0}")]
    Data(String),
}

impl RunError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        RunError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            _ => EXIT_RUNTIME,
        }
    }

    /// Last time at which the evolved state was finite, for divergences.
    pub fn last_good_time(&self) -> Option<f64> {
        let evo = match self {
            RunError::Evolution(e) => e,
            RunError::Diagnostics(bo_diagnostics::DiagnosticsError::Evolution(e)) => e,
            _ => return None,
        };
        match evo {
            EvolutionError::Divergence { last_good_time, .. } => Some(*last_good_time),
            _ => None,
        }
    }
}
