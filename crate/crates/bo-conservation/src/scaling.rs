//! The nonlinear scaling operator and its conserved square norm.
//!
//! ```text
//! 𝓛φ   = xφ − 2tHφₓ + (t/4)(3φ² − (Hφ)²)
//! G(φ) = ∫ x²m − 4xt·p + 4t²·e dx
//! ```
//!
//! with the densities `m, p, e` of [`crate::densities`]. For solutions of the
//! equation `G(φ(t))` is conserved, and for every localized field
//! `G(φ) = ‖𝓛φ‖²_{L²}` at each fixed `t`. Both objects use the centered
//! coordinate `x ∈ [−L/2, L/2)`, optionally shifted by a center `x₀`
//! (`x → x − x₀`), and enforce the localization guards: order 1 for `𝓛`,
//! order 2 for the `x²`-weighted `G`.

use bo_spectral::projection::{project, Projector};
use bo_spectral::{Complex64, RealField, Result};

use crate::functionals::{densities, Pieces};

/// `𝓛φ` at time `t` about the origin.
pub fn scaling_operator(phi: &RealField, t: f64) -> Result<RealField> {
    scaling_operator_about(phi, t, 0.0)
}

/// `𝓛φ` at time `t` with the weight `x − x0`.
pub fn scaling_operator_about(phi: &RealField, t: f64, x0: f64) -> Result<RealField> {
    phi.check_localized(1)?;
    let pc = Pieces::new(phi)?;
    let hh = pc.h_phi.mul_dealiased(&pc.h_phi)?;
    let g = phi.grid();
    let samples = g
        .x()
        .iter()
        .enumerate()
        .map(|(j, x)| {
            (x - x0) * pc.phi.samples()[j] - 2.0 * t * pc.h_phi_x.samples()[j]
                + 0.25 * t * (3.0 * pc.sq.samples()[j] - hh.samples()[j])
        })
        .collect();
    RealField::new(g, samples)
}

/// `G(φ)` at time `t` about the origin.
pub fn scaling_functional(phi: &RealField, t: f64) -> Result<f64> {
    scaling_functional_about(phi, t, 0.0)
}

/// `G(φ)` at time `t` with the weight `x − x0`.
pub fn scaling_functional_about(phi: &RealField, t: f64, x0: f64) -> Result<f64> {
    phi.check_localized(2)?;
    let d = densities(phi)?;
    let g = phi.grid();
    let sum: f64 = g
        .x()
        .iter()
        .enumerate()
        .map(|(j, x)| {
            let y = x - x0;
            y * y * d.m.samples()[j] - 4.0 * y * t * d.p.samples()[j] + 4.0 * t * t * d.e.samples()[j]
        })
        .sum();
    Ok(g.spacing() * sum)
}

/// The linear-flow analogue `∫ x²φ² − 4xt·φHφₓ + 4t²·φₓ² dx`, which equals
/// `‖(x − 2tH∂ₓ)φ‖²` for every localized `φ`.
pub fn linear_scaling_functional(phi: &RealField, t: f64) -> Result<f64> {
    phi.check_localized(2)?;
    let pc = Pieces::new(phi)?;
    let g = phi.grid();
    let sum: f64 = g
        .x()
        .iter()
        .enumerate()
        .map(|(j, x)| {
            let f = pc.phi.samples()[j];
            x * x * f * f - 4.0 * x * t * f * pc.h_phi_x.samples()[j] + 4.0 * t * t * pc.phi_x.samples()[j].powi(2)
        })
        .sum();
    Ok(g.spacing() * sum)
}

/// The moment `∫ x(φ⁺)³ dx` of the cube of the positive-frequency part, and
/// the natural size `∫ |x||φ⁺|³ dx` of its integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentCheck {
    /// `∫ x(φ⁺)³ dx`.
    pub moment: Complex64,
    /// `∫ |x||φ⁺|³ dx`.
    pub scale: f64,
}

impl MomentCheck {
    /// `|moment| / scale` (0 for the zero field).
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.moment.norm() / self.scale
        }
    }
}

/// Evaluates `∫ x(φ⁺)³ dx`, which vanishes for localized real `φ` because the
/// transform of `(φ⁺)³` is supported in `ξ ≥ 0` and vanishes to second order
/// at the origin.
pub fn moment_cancellation(phi: &RealField) -> Result<MomentCheck> {
    phi.check_localized(1)?;
    let plus = project(phi, Projector::Plus)?;
    let cube = plus.mul_dealiased(&plus)?.mul_dealiased(&plus)?;
    let g = phi.grid();
    let h = g.spacing();
    let mut moment = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for ((x, c), p) in g.x().iter().zip(cube.samples()).zip(plus.samples()) {
        moment += c * *x;
        scale += x.abs() * p.norm().powi(3);
    }
    Ok(MomentCheck {
        moment: moment * h,
        scale: scale * h,
    })
}
