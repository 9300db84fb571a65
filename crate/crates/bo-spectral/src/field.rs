//! Field representations: real samples, complex samples and Fourier
//! coefficients, each tied to the [`Grid`] it was built on.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::grid::Grid;

fn check_finite_real(samples: &[f64]) -> Result<()> {
    match samples.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(SpectralError::NonFinite(i)),
        None => Ok(()),
    }
}

fn check_finite_complex(samples: &[Complex64]) -> Result<()> {
    match samples.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        Some(i) => Err(SpectralError::NonFinite(i)),
        None => Ok(()),
    }
}

fn check_len(grid: &Grid, len: usize) -> Result<()> {
    if grid.n() == len {
        Ok(())
    } else {
        Err(SpectralError::SizeMismatch {
            expected: grid.n(),
            got: len,
        })
    }
}

/// A real-valued field sampled on the grid.
#[derive(Clone, Debug)]
pub struct RealField {
    grid: Arc<Grid>,
    samples: Vec<f64>,
}

impl RealField {
    /// Wraps samples, checking their count and finiteness.
    pub fn new(grid: &Arc<Grid>, samples: Vec<f64>) -> Result<Self> {
        check_len(grid, samples.len())?;
        check_finite_real(&samples)?;
        Ok(RealField {
            grid: grid.clone(),
            samples,
        })
    }

    /// The zero field.
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        RealField {
            grid: grid.clone(),
            samples: vec![0.0; grid.n()],
        }
    }

    /// Samples `f(x_j)`.
    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = grid.x().iter().map(|&x| f(x)).collect();
        RealField::new(grid, samples)
    }

    /// The grid this field lives on.
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    /// Sample values.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Consumes the field, returning the samples.
    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Discrete Fourier transform (flagged real-valued).
    pub fn dft(&self) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.grid.fft_real(&self.samples),
            real: true,
        }
    }

    /// Promotes to a complex field.
    pub fn to_complex(&self) -> ComplexField {
        ComplexField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    /// Arithmetic mean of the samples (the zero mode divided by `n`).
    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// `max_x |f|`.
    pub fn peak(&self) -> f64 {
        crate::norms::sup_abs(&self.samples)
    }

    /// `max |f|` over the outer boundary bands of the box.
    pub fn boundary_magnitude(&self) -> f64 {
        let w = self.grid.boundary_width();
        let n = self.samples.len();
        self.samples[..w]
            .iter()
            .chain(&self.samples[n - w..])
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Localization ratio used by the x-weight guards.
    ///
    /// Order 1 (weight `x`): boundary magnitude of `f` divided by its peak.
    /// Order 2 (weight `x²` on quadratic densities such as in `∫x²φ²`): the
    /// same ratio computed for the weighted field `x·f`, i.e. the square root
    /// of the boundary ratio of the integrand `x²f²`. A zero field has ratio 0.
    pub fn boundary_ratio(&self, order: u32) -> f64 {
        let weighted;
        let f: &[f64] = if order >= 2 {
            weighted = self
                .samples
                .iter()
                .zip(self.grid.x())
                .map(|(v, x)| v * x)
                .collect::<Vec<_>>();
            &weighted
        } else {
            &self.samples
        };
        let peak = crate::norms::sup_abs(f);
        if peak == 0.0 {
            return 0.0;
        }
        let w = self.grid.boundary_width();
        let n = f.len();
        let b = f[..w]
            .iter()
            .chain(&f[n - w..])
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        b / peak
    }

    /// Enforces the localization precondition for an x-weight of the given
    /// order (see [`RealField::boundary_ratio`]).
    pub fn check_localized(&self, order: u32) -> Result<()> {
        let ratio = self.boundary_ratio(order);
        let tol = self.grid.guards().boundary_tol;
        if ratio <= tol {
            Ok(())
        } else {
            Err(SpectralError::NotLocalized { ratio, tol, order })
        }
    }

    /// Pointwise linear combination `a·self + b·other`.
    pub fn axpby(&self, a: f64, other: &RealField, b: f64) -> Result<RealField> {
        self.grid.check_same(&other.grid)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(u, v)| a * u + b * v)
            .collect();
        RealField::new(&self.grid, samples)
    }

    /// `self + other`.
    pub fn add(&self, other: &RealField) -> Result<RealField> {
        self.axpby(1.0, other, 1.0)
    }

    /// `self − other`.
    pub fn sub(&self, other: &RealField) -> Result<RealField> {
        self.axpby(1.0, other, -1.0)
    }

    /// `s·self`.
    pub fn scale(&self, s: f64) -> RealField {
        RealField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|v| s * v).collect(),
        }
    }

    /// Pointwise product followed by 2/3-rule de-aliasing.
    pub fn mul_dealiased(&self, other: &RealField) -> Result<RealField> {
        self.grid.check_same(&other.grid)?;
        let prod: Vec<f64> = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect();
        let spec = crate::ops::dealias(&RealField::new(&self.grid, prod)?.dft());
        spec.to_real()
    }

    /// `∫ f² dx` by the spacing-weighted sum.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.spacing() * self.samples.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// `∫ f g dx` by the spacing-weighted sum.
    pub fn inner(&self, other: &RealField) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self.grid.spacing() * self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).sum::<f64>())
    }

    /// `∫ f dx` by the spacing-weighted sum.
    pub fn integral(&self) -> f64 {
        self.grid.spacing() * self.samples.iter().sum::<f64>()
    }

    /// Largest pointwise difference to another field.
    pub fn max_abs_diff(&self, other: &RealField) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// A complex-valued field sampled on the grid.
#[derive(Clone, Debug)]
pub struct ComplexField {
    grid: Arc<Grid>,
    samples: Vec<Complex64>,
}

impl ComplexField {
    /// Wraps samples, checking their count and finiteness.
    pub fn new(grid: &Arc<Grid>, samples: Vec<Complex64>) -> Result<Self> {
        check_len(grid, samples.len())?;
        check_finite_complex(&samples)?;
        Ok(ComplexField {
            grid: grid.clone(),
            samples,
        })
    }

    /// The zero field.
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        ComplexField {
            grid: grid.clone(),
            samples: vec![Complex64::new(0.0, 0.0); grid.n()],
        }
    }

    /// The grid this field lives on.
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    /// Sample values.
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Consumes the field, returning the samples.
    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Discrete Fourier transform (not flagged real-valued).
    pub fn dft(&self) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.grid.fft(&self.samples),
            real: false,
        }
    }

    /// Real parts.
    pub fn re(&self) -> RealField {
        RealField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|c| c.re).collect(),
        }
    }

    /// Imaginary parts.
    pub fn im(&self) -> RealField {
        RealField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|c| c.im).collect(),
        }
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> ComplexField {
        ComplexField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Pointwise linear combination `a·self + b·other`.
    pub fn axpby(&self, a: Complex64, other: &ComplexField, b: Complex64) -> Result<ComplexField> {
        self.grid.check_same(&other.grid)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(u, v)| a * u + b * v)
            .collect();
        ComplexField::new(&self.grid, samples)
    }

    /// `self + other`.
    pub fn add(&self, other: &ComplexField) -> Result<ComplexField> {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    /// `self − other`.
    pub fn sub(&self, other: &ComplexField) -> Result<ComplexField> {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    /// `s·self`.
    pub fn scale(&self, s: Complex64) -> ComplexField {
        ComplexField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|v| s * v).collect(),
        }
    }

    /// Pointwise product followed by 2/3-rule de-aliasing.
    pub fn mul_dealiased(&self, other: &ComplexField) -> Result<ComplexField> {
        self.grid.check_same(&other.grid)?;
        let prod: Vec<Complex64> = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect();
        let spec = crate::ops::dealias(&ComplexField::new(&self.grid, prod)?.dft());
        Ok(spec.idft())
    }

    /// Pointwise product without de-aliasing.
    pub fn mul_pointwise(&self, other: &ComplexField) -> Result<ComplexField> {
        self.grid.check_same(&other.grid)?;
        let prod = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect();
        ComplexField::new(&self.grid, prod)
    }

    /// `(∫ |f|² dx)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.spacing() * self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `∫ f·conj(g) dx`.
    pub fn inner(&self, other: &ComplexField) -> Result<Complex64> {
        self.grid.check_same(&other.grid)?;
        let s: Complex64 = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.grid.spacing())
    }

    /// `max |f|`.
    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
    }
}

/// Fourier coefficients of a field, in FFT order (see [`crate::grid`]).
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Arc<Grid>,
    coeffs: Vec<Complex64>,
    real: bool,
}

impl SpectralField {
    /// Wraps coefficients. `real` flags a Hermitian-symmetric spectrum.
    pub fn new(grid: &Arc<Grid>, coeffs: Vec<Complex64>, real: bool) -> Result<Self> {
        check_len(grid, coeffs.len())?;
        check_finite_complex(&coeffs)?;
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs,
            real,
        })
    }

    /// The zero spectrum (flagged real).
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n()],
            real: true,
        }
    }

    /// The grid this spectrum lives on.
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    /// Coefficients in FFT order.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Consumes the spectrum, returning the coefficients.
    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Whether the spectrum is flagged as that of a real field.
    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Inverse transform to complex samples.
    pub fn idft(&self) -> ComplexField {
        ComplexField {
            grid: self.grid.clone(),
            samples: self.grid.ifft(&self.coeffs),
        }
    }

    /// Inverse transform keeping the real part.
    pub fn to_real(&self) -> Result<RealField> {
        RealField::new(&self.grid, self.grid.ifft_real(&self.coeffs))
    }

    /// Largest violation of `F(−ξ) = conj(F(ξ))`, relative to the largest
    /// coefficient. The Nyquist slot must be real.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.coeffs.len();
        let scale = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = self.coeffs[0].im.abs().max(self.coeffs[n / 2].im.abs());
        for j in 1..n / 2 {
            worst = worst.max((self.coeffs[j] - self.coeffs[n - j].conj()).norm());
        }
        worst / scale
    }

    /// Applies a Fourier multiplier given as a function of (FFT index, ξ).
    /// `keeps_real` states whether the symbol maps real fields to real fields.
    pub fn apply(&self, keeps_real: bool, symbol: impl Fn(usize, f64) -> Complex64) -> SpectralField {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.grid.xi())
            .enumerate()
            .map(|(j, (c, &xi))| c * symbol(j, xi))
            .collect();
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
            real: self.real && keeps_real,
        }
    }

    /// Coefficient-wise linear combination.
    pub fn axpby(&self, a: Complex64, other: &SpectralField, b: Complex64) -> Result<SpectralField> {
        self.grid.check_same(&other.grid)?;
        let real_coeffs = a.im == 0.0 && b.im == 0.0;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(u, v)| a * u + b * v).collect();
        Ok(SpectralField {
            grid: self.grid.clone(),
            coeffs,
            real: self.real && other.real && real_coeffs,
        })
    }

    /// Sum of two spectra.
    pub fn add(&self, other: &SpectralField) -> Result<SpectralField> {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    /// Coefficient-wise scaling.
    pub fn scale(&self, s: Complex64) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| s * c).collect(),
            real: self.real && s.im == 0.0,
        }
    }
}
