//! Conserved functionals of the Benjamin–Ono equation
//! `∂ₜφ + H∂²ₓφ = ½∂ₓ(φ²)`.
//!
//! * [`mass`], [`momentum`], [`energy`] and their [`densities`];
//! * the scaling operator [`scaling_operator`] `𝓛φ` and the functional
//!   [`scaling_functional`] `G(φ) = ‖𝓛φ‖²`, conserved along the flow;
//! * [`moment_cancellation`]: `∫ x(φ⁺)³ dx = 0`;
//! * [`conservation_report`] and [`decay_bounds_check`] over trajectories.
//!
//! Quadrature is the spacing-weighted sum; every product is de-aliased.

pub mod functionals;
pub mod report;
pub mod scaling;

pub use functionals::{densities, energy, mass, momentum, momentum_parts, Densities};
pub use report::{
    conservation_report, conservation_row, decay_bounds_check, japanese, relative_drift, ConservationReport,
    ConservationRow, DecayBoundsReport, Drifts, DRIFT_FLOOR,
};
pub use scaling::{
    linear_scaling_functional, moment_cancellation, scaling_functional, scaling_functional_about,
    scaling_operator, scaling_operator_about, MomentCheck,
};

/// Version of this crate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
