//! Discrete Fourier calculus on a periodic box standing in for the real line.
//!
//! This crate provides the [`Grid`], the field types [`RealField`],
//! [`ComplexField`] and [`SpectralField`], the Hilbert transform (symbol
//! `−i sgn ξ`), derivatives `(iξ)^k`, `|D|^s` and the inverse derivative, the
//! Littlewood–Paley projections built on a fixed smooth bump, Sobolev / sup /
//! x-weighted norms, 2/3-rule de-aliasing, and the `BOF1` binary snapshot
//! format.
//!
//! Whole-line statements are only meaningful for fields that decay towards the
//! edges of the box; x-weighted operations enforce that through
//! [`RealField::check_localized`], and inverse derivatives refuse fields with
//! a mean unless asked to drop it ([`MeanMode`]).

pub mod error;
pub mod field;
pub mod grid;
pub mod norms;
pub mod ops;
pub mod projection;
pub mod snapshot;

pub use error::{Result, SpectralError};
pub use field::{ComplexField, RealField, SpectralField};
pub use grid::{Grid, Guards};
pub use norms::{sobolev_norm, sobolev_norm_spectral, sup_norm, weighted_l2};
pub use ops::{
    abs_derivative, antiderivative, dealias, derivative, dft, hilbert, idft, primitive_phi,
    Antiderivative, MeanMode, Pin,
};
pub use projection::{bump, project, project_real, project_spectral, Projector};
pub use snapshot::{Payload, Snapshot};

pub use num_complex::Complex64;

/// Version of this crate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
