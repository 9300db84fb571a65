//! The exact linear flow `∂ₜψ + H∂²ₓψ = 0` and the operator `L = x − 2tH∂ₓ`.

use bo_spectral::ops::{derivative_symbol, hilbert_symbol};
use bo_spectral::{Complex64, Grid, RealField, SpectralField};

use crate::error::Result;

/// Symbol of the linear part, `φ_t = Λφ`, `Λ(ξ) = −iξ|ξ|` (zero at Nyquist,
/// where the Hilbert symbol vanishes).
pub fn linear_symbol(grid: &Grid, j: usize, xi: f64) -> Complex64 {
    // −H∂² has symbol −(−i sgn ξ)(iξ)² = −iξ|ξ|.
    -hilbert_symbol(grid, j, xi) * derivative_symbol(grid, j, xi, 2)
}

/// Multiplies every mode by `e^{−iξ|ξ|t}`.
pub fn linear_propagate_spectral(f: &SpectralField, t: f64) -> SpectralField {
    let g = f.grid().clone();
    f.apply(true, |j, xi| (linear_symbol(&g, j, xi) * t).exp())
}

/// The exact linear propagator `e^{−tH∂²ₓ}` (no time-stepping error).
pub fn linear_propagate(f: &RealField, t: f64) -> RealField {
    linear_propagate_spectral(&f.dft(), t)
        .to_real()
        .expect("unimodular multiplier keeps samples finite")
}

/// `L(t)f = x f − 2t·H∂ₓ f`, guarded by the order-1 localization check.
pub fn push_forward_l(f: &RealField, t: f64) -> Result<RealField> {
    f.check_localized(1)?;
    let g = f.grid().clone();
    let hdx = f
        .dft()
        .apply(true, |j, xi| hilbert_symbol(&g, j, xi) * derivative_symbol(&g, j, xi, 1))
        .to_real()?;
    let samples = f
        .samples()
        .iter()
        .zip(g.x())
        .zip(hdx.samples())
        .map(|((v, x), h)| x * v - 2.0 * t * h)
        .collect();
    Ok(RealField::new(&g, samples)?)
}
