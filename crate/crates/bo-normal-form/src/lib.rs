//! Paradifferential normal form of the Benjamin–Ono equation
//! `∂ₜφ + H∂²ₓφ = ½∂ₓ(φ²)`.
//!
//! For each dyadic index `k` the positive-frequency piece `φ_k⁺ = P_k⁺φ` is
//! corrected by a quadratic form, `φ̃_k⁺ = φ_k⁺ + B_k(φ, φ)`, and then
//! renormalized by the gauge `ψ_k⁺ = φ̃_k⁺e^{−iΦ_{<k}}`. This crate evaluates
//! those objects on a grid and measures the exact identities
//!
//! ```text
//! A_BO φ̃_k⁺ = Q³_k,    (i∂ₜ + ∂²ₓ)ψ_k⁺ = (Q̃³_k + Q̃⁴_k)e^{−iΦ_{<k}}
//! ```
//!
//! with all time derivatives replaced through the equation itself.
//!
//! Inverse derivatives excise the zero mode; inputs must be mean-zero unless
//! [`MeanMode::Drop`](bo_spectral::MeanMode::Drop) is requested.

pub mod bilinear;
mod context;
pub mod error;
pub mod operator;

pub use bilinear::{
    bilinear_b0, bilinear_bk, bilinear_bk_commutator, bilinear_bk_offset, commutator_leibnitz, linearized_bk,
};
pub use error::{NormalFormError, Result};
pub use operator::{
    apply_abo, cubic_q3, cubic_q3_tilde, gauge, identity_defects, identity_report, paradifferential_part,
    quartic_q4_tilde, residual_gauged, residual_identity, residual_zero_mode, AboOptions, DyadicVariable, Flow,
    IdentityDefects, IdentityReport, VariableKind, ZeroModeDefect,
};

/// Version of this crate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
