//! Measurements on Benjamin–Ono fields and trajectories: minimal frequency
//! envelopes, discrete Strichartz norms, the translation-sup bilinear
//! functional, dispersive decay profiles and the truncation convergence
//! experiment.
//!
//! The analytical bounds these quantities are compared with hold modulo
//! constants, so every report carries measured ratios and fitted exponents
//! rather than verdicts; thresholds belong to the callers.

pub mod bilinear;
pub mod convergence;
pub mod decay;
pub mod envelope;
pub mod error;
pub mod fit;
pub mod strichartz;

pub use bilinear::{bilinear_functional, default_shifts, support_separation, BandPair, BilinearReport};
pub use convergence::{convergence_experiment, sup_h_minus_half, truncate, ConvergenceReport};
pub use decay::{
    cumulative_primitive, decay_profile, left_refinement_ratio, point_envelope, profile_ratio_field, DecayReport,
};
pub use envelope::{dyadic_norms, envelope_from_ratios, is_admissible, minimal_envelope, EnvelopeReport};
pub use error::{DiagnosticsError, Result};
pub use fit::{fit_line, fit_power_law, LineFit};
pub use strichartz::{besov_strichartz_norm, strichartz_norms, strichartz_norms_window, StrichartzNorms};

/// Version of this crate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
