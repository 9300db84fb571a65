//! Norms: Sobolev, sup and x-weighted L².
//!
//! With the transform convention of [`crate::grid`], the Sobolev norm is
//! `‖f‖_{H^s} = ((L/n²)·Σ_m ⟨ξ_m⟩^{2s}|F_m|²)^{1/2}`, `⟨ξ⟩ = (1 + ξ²)^{1/2}`,
//! so that `s = 0` reproduces the quadrature L² norm `(h·Σ_j |f_j|²)^{1/2}`.
//! A single mode `A·cos(ξ₀x)` (ξ₀ ≠ 0, not Nyquist) has
//! `‖·‖_{H^s} = A·⟨ξ₀⟩^s·(L/2)^{1/2}`.

use crate::error::Result;
use crate::field::{RealField, SpectralField};

/// `max |v|` over a slice.
pub fn sup_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Inhomogeneous Sobolev norm of a spectrum.
pub fn sobolev_norm_spectral(f: &SpectralField, s: f64) -> f64 {
    let g = f.grid();
    let n = g.n() as f64;
    let sum: f64 = f
        .coeffs()
        .iter()
        .zip(g.xi())
        .map(|(c, xi)| (1.0 + xi * xi).powf(s) * c.norm_sqr())
        .sum();
    (g.length() / (n * n) * sum).sqrt()
}

/// Inhomogeneous Sobolev norm `‖f‖_{H^s}`.
pub fn sobolev_norm(f: &RealField, s: f64) -> f64 {
    sobolev_norm_spectral(&f.dft(), s)
}

/// `sup_x |f|`.
pub fn sup_norm(f: &RealField) -> f64 {
    f.peak()
}

/// `‖x^p f‖_{L²}` with `x ∈ [−L/2, L/2)` unperiodized. For `p ≥ 1` the
/// localization guard of order `p` must hold.
pub fn weighted_l2(f: &RealField, power: u32) -> Result<f64> {
    if power >= 1 {
        f.check_localized(power)?;
    }
    let g = f.grid();
    let sum: f64 = f
        .samples()
        .iter()
        .zip(g.x())
        .map(|(v, x)| {
            let w = x.powi(power as i32) * v;
            w * w
        })
        .sum();
    Ok((g.spacing() * sum).sqrt())
}
