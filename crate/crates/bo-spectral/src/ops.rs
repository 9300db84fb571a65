//! Fourier multipliers: the Hilbert transform, derivatives of integer and
//! fractional order, the inverse derivative, the primitive `Φ` with
//! `Φ_x = φ/2`, and 2/3-rule de-aliasing.
//!
//! Odd symbols (`−i sgn ξ`, `(iξ)^{odd}`, `(iξ)^{-1}`) vanish on the unpaired
//! Nyquist mode so that real fields stay real.

use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::field::{ComplexField, RealField, SpectralField};
use crate::grid::Grid;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Symbol of the Hilbert transform, `−i sgn ξ` (zero at `ξ = 0` and at the
/// Nyquist mode).
pub fn hilbert_symbol(grid: &Grid, j: usize, xi: f64) -> Complex64 {
    if grid.is_nyquist(j) || xi == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, -xi.signum())
    }
}

/// Symbol of `∂ₓ^order`, `(iξ)^order`.
pub fn derivative_symbol(grid: &Grid, j: usize, xi: f64, order: u32) -> Complex64 {
    if order % 2 == 1 && grid.is_nyquist(j) {
        return Complex64::new(0.0, 0.0);
    }
    (I * xi).powu(order)
}

/// Symbol of `|D|^s`, `|ξ|^s` with the zero mode mapped to 0 for `s ≠ 0`.
pub fn abs_derivative_symbol(xi: f64, s: f64) -> Complex64 {
    if s == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if xi == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(xi.abs().powf(s), 0.0)
    }
}

/// Symbol of the zero-mode-excised inverse derivative, `(iξ)^{-1}`.
pub fn inverse_derivative_symbol(grid: &Grid, j: usize, xi: f64) -> Complex64 {
    if xi == 0.0 || grid.is_nyquist(j) {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, -1.0 / xi)
    }
}

/// Discrete Fourier transform of a real field.
pub fn dft(f: &RealField) -> SpectralField {
    f.dft()
}

/// Discrete Fourier transform of a complex field.
pub fn dft_complex(f: &ComplexField) -> SpectralField {
    f.dft()
}

/// Inverse transform.
pub fn idft(f: &SpectralField) -> ComplexField {
    f.idft()
}

/// Hilbert transform of a spectrum.
pub fn hilbert_spectral(f: &SpectralField) -> SpectralField {
    let g = f.grid().clone();
    f.apply(true, |j, xi| hilbert_symbol(&g, j, xi))
}

/// Hilbert transform `H f`, symbol `−i sgn ξ`.
pub fn hilbert(f: &RealField) -> RealField {
    hilbert_spectral(&f.dft()).to_real().expect("multiplier keeps samples finite")
}

/// `∂ₓ^order` of a spectrum.
pub fn derivative_spectral(f: &SpectralField, order: u32) -> SpectralField {
    let g = f.grid().clone();
    f.apply(true, |j, xi| derivative_symbol(&g, j, xi, order))
}

/// `∂ₓ^order f`.
pub fn derivative(f: &RealField, order: u32) -> RealField {
    derivative_spectral(&f.dft(), order).to_real().expect("multiplier keeps samples finite")
}

/// `|D|^s` of a spectrum.
pub fn abs_derivative_spectral(f: &SpectralField, s: f64) -> SpectralField {
    f.apply(true, |_, xi| abs_derivative_symbol(xi, s))
}

/// `|D|^s f`.
pub fn abs_derivative(f: &RealField, s: f64) -> RealField {
    abs_derivative_spectral(&f.dft(), s).to_real().expect("multiplier keeps samples finite")
}

/// Zero-mode-excised inverse derivative of a spectrum (no mean check).
pub fn inverse_derivative_spectral(f: &SpectralField) -> SpectralField {
    let g = f.grid().clone();
    f.apply(true, |j, xi| inverse_derivative_symbol(&g, j, xi))
}

/// How inverse derivatives treat a nonzero mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanMode {
    /// Reject inputs whose |mean| exceeds the grid's `mean_tol`.
    Strict,
    /// Subtract the mean and report what was dropped.
    Drop,
}

/// Where the additive constant of an antiderivative is pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pin {
    /// Output has zero mean.
    ZeroMean,
    /// Output vanishes at the left edge `x = −L/2`, matching `∫_{−∞}^x` for
    /// localized input.
    LeftEdge,
}

/// Result of an inverse derivative together with the mean that was excised.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    /// The antiderivative.
    pub field: RealField,
    /// Mean of the input that was dropped (0 up to `mean_tol` in strict mode).
    pub dropped_mean: f64,
    /// Size of the dropped linear term, `|mean|·L/2`.
    pub dropped_linear_magnitude: f64,
}

fn check_mean(f: &RealField, mode: MeanMode) -> Result<f64> {
    let mean = f.mean();
    let tol = f.grid().guards().mean_tol;
    if mode == MeanMode::Strict && mean.abs() > tol {
        return Err(SpectralError::NonZeroMean { mean, tol });
    }
    Ok(mean)
}

/// `∂ₓ⁻¹ f` with symbol `(iξ)^{-1}` and the zero mode excised.
pub fn antiderivative(f: &RealField, mode: MeanMode, pin: Pin) -> Result<Antiderivative> {
    let mean = check_mean(f, mode)?;
    let mut field = inverse_derivative_spectral(&f.dft()).to_real()?;
    if pin == Pin::LeftEdge {
        let left = field.samples()[0];
        let shifted = field.samples().iter().map(|v| v - left).collect();
        field = RealField::new(f.grid(), shifted)?;
    }
    Ok(Antiderivative {
        field,
        dropped_mean: mean,
        dropped_linear_magnitude: mean.abs() * 0.5 * f.grid().length(),
    })
}

/// The primitive `Φ` with `∂ₓΦ = φ/2` (on the mean-zero part), pinned to 0 at
/// the left edge of the box.
pub fn primitive_phi(phi: &RealField, mode: MeanMode) -> Result<RealField> {
    Ok(antiderivative(phi, mode, Pin::LeftEdge)?.field.scale(0.5))
}

/// Zeroes every coefficient with `|m| > n/3` (2/3 rule). Idempotent.
pub fn dealias(f: &SpectralField) -> SpectralField {
    let g = f.grid().clone();
    let cut = g.dealias_cutoff();
    f.apply(true, |j, _| {
        if g.mode(j).abs() > cut {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    })
}

/// In-place 2/3-rule truncation of raw coefficients.
pub fn dealias_in_place(grid: &Grid, coeffs: &mut [Complex64]) {
    let cut = grid.dealias_cutoff();
    for (j, c) in coeffs.iter_mut().enumerate() {
        if grid.mode(j).abs() > cut {
            *c = Complex64::new(0.0, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> std::sync::Arc<Grid> {
        Grid::new(128, 2.0 * PI).unwrap()
    }

    #[test]
    fn hilbert_of_cosine_is_sine() {
        let g = grid();
        let f = RealField::from_fn(&g, |x| (5.0 * x).cos()).unwrap();
        let h = hilbert(&f);
        for (v, x) in h.samples().iter().zip(g.x()) {
            assert!((v - (5.0 * x).sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn hilbert_kills_constants() {
        let g = grid();
        let f = RealField::from_fn(&g, |_| 3.0).unwrap();
        assert!(hilbert(&f).peak() < 1e-15);
    }

    #[test]
    fn derivative_of_sine() {
        let g = grid();
        let f = RealField::from_fn(&g, |x| (7.0 * x).sin()).unwrap();
        let d = derivative(&f, 1);
        for (v, x) in d.samples().iter().zip(g.x()) {
            assert!((v - 7.0 * (7.0 * x).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn strict_antiderivative_rejects_mean() {
        let g = grid();
        let f = RealField::from_fn(&g, |x| 1.0 + x.sin()).unwrap();
        match antiderivative(&f, MeanMode::Strict, Pin::ZeroMean) {
            Err(SpectralError::NonZeroMean { mean, .. }) => assert!((mean - 1.0).abs() < 1e-14),
            other => panic!("expected mean error, got {other:?}"),
        }
        let a = antiderivative(&f, MeanMode::Drop, Pin::ZeroMean).unwrap();
        assert!((a.dropped_mean - 1.0).abs() < 1e-14);
        for (v, x) in a.field.samples().iter().zip(g.x()) {
            assert!((v + x.cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn primitive_of_cosine() {
        let g = grid();
        let f = RealField::from_fn(&g, |x| 2.0 * (3.0 * x).cos()).unwrap();
        let p = primitive_phi(&f, MeanMode::Strict).unwrap();
        assert_eq!(p.samples()[0], 0.0);
        let c = -(3.0 * g.x()[0]).sin() / 3.0;
        for (v, x) in p.samples().iter().zip(g.x()) {
            assert!((v - ((3.0 * x).sin() / 3.0 + c)).abs() < 1e-13);
        }
    }

    #[test]
    fn dealias_is_idempotent_and_cuts_top_third() {
        let g = Grid::new(64, 2.0 * PI).unwrap();
        let f = RealField::from_fn(&g, |x| (30.0 * x).cos() + (5.0 * x).sin()).unwrap();
        let d = dealias(&f.dft());
        let dd = dealias(&d);
        for (a, b) in d.coeffs().iter().zip(dd.coeffs()) {
            assert_eq!(a, b);
        }
        let back = d.to_real().unwrap();
        for (v, x) in back.samples().iter().zip(g.x()) {
            assert!((v - (5.0 * x).sin()).abs() < 1e-13);
        }
    }
}
