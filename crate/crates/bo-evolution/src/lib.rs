//! Time evolution for the Benjamin–Ono equation
//! `∂ₜφ + H∂²ₓφ = ½∂ₓ(φ²)` on the periodic box of [`bo_spectral`].
//!
//! * [`linear_propagate`]: the exact linear flow `e^{−iξ|ξ|t}`;
//! * [`evolve`] / [`step`]: integrating-factor RK4 (default) or ETDRK4 with the
//!   dispersive part treated exactly and the nonlinearity evaluated in
//!   conservative form with 2/3-rule de-aliasing;
//! * [`LinearizedSolver`]: the linearized flow `(∂ₜ + H∂²ₓ)v = ∂ₓ(φv)`;
//! * [`soliton`], [`gaussian`], [`random_localized`]: reference data;
//! * [`push_forward_l`]: `L = x − 2tH∂ₓ`.

pub mod data;
pub mod error;
pub mod integrator;
pub mod linearized;
pub mod propagator;
pub mod solver;

pub use data::{
    data_norm, gaussian, gaussian_normalized, line_soliton, normalize_data, random_band_limited, random_localized,
    soliton,
    SolitonProfile,
};
pub use error::{EvolutionError, Result};
pub use integrator::Scheme;
pub use linearized::{step_linearized, LinearizedSolver, LinearizedState};
pub use propagator::{linear_propagate, linear_propagate_spectral, linear_symbol, push_forward_l};
pub use solver::{
    dt_max, evolve, step, step_plan, EvolveOptions, Solver, SolverState, Trajectory, TrajectoryMeta,
    DEFAULT_CFL,
};

/// Version of this crate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
