//! Error type for propagators, integrators and data constructors.

use bo_spectral::SpectralError;
use thiserror::Error;

/// Failures raised by the evolution module.
#[derive(Debug, Error)]
pub enum EvolutionError {
    /// Propagated spectral-core failure (grid mismatch, guards, ...).
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    /// Time step must be finite and positive.
    #[error("time step must be finite and positive, got {0}")]
    InvalidDt(f64),
    /// Final time must be finite and non-negative.
    #[error("final time must be finite and non-negative, got {0}")]
    InvalidEndTime(f64),
    /// The step exceeds the stability heuristic.
    #[error("time step {dt} exceeds the stability limit {dt_max} (cfl · h / sup|φ|)")]
    DtTooLarge { dt: f64, dt_max: f64 },
    /// The run blew up.
    #[error("divergence at t = {time} ({reason}); last good time {last_good_time}")]
    Divergence {
        time: f64,
        last_good_time: f64,
        reason: String,
    },
    /// A time outside the sampled background trajectory was requested.
    #[error("time {t} outside the background span [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },
    /// Initial-data parameters inconsistent with the grid.
    #[error("invalid initial data: {0}")]
    BadProfile(String),
    /// Trajectory construction error.
    #[error("invalid trajectory: {0}")]
    BadTrajectory(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, EvolutionError>;
