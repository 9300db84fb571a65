//! The uniform periodic grid that stands in for the real line.
//!
//! Conventions used throughout the workspace:
//!
//! * the box is `x ∈ [−L/2, L/2)` sampled at `x_j = −L/2 + j·h`, `h = L/n`;
//! * coefficients are stored in FFT order: index `j` carries the integer mode
//!   `m = j` for `j < n/2` and `m = j − n` otherwise, so `m ∈ [−n/2, n/2)` and
//!   the single Nyquist mode is `m = −n/2`;
//! * the wavenumber of mode `m` is `ξ_m = 2πm/L`;
//! * the forward transform is unnormalized, `F_m = Σ_j f_j e^{−2πi jm/n}`, and
//!   the inverse divides by `n`. Parseval therefore reads
//!   `h·Σ_j |f_j|² = (L/n²)·Σ_m |F_m|²`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Result, SpectralError};

/// Tolerances used by the precondition guards of inverse derivatives and
/// x-weighted operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Guards {
    /// Largest |mean| accepted by strict inverse derivatives.
    pub mean_tol: f64,
    /// Largest ratio (boundary magnitude / peak) accepted by x-weighted
    /// operators.
    pub boundary_tol: f64,
    /// Fraction of the box, at each end, that counts as "boundary".
    pub boundary_fraction: f64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            mean_tol: 1e-10,
            boundary_tol: 1e-8,
            boundary_fraction: 0.05,
        }
    }
}

impl Guards {
    fn validate(&self) -> Result<()> {
        let checks = [
            ("mean_tol", self.mean_tol),
            ("boundary_tol", self.boundary_tol),
            ("boundary_fraction", self.boundary_fraction),
        ];
        for (name, value) in checks {
            if !value.is_finite() || value < 0.0 {
                return Err(SpectralError::BadGuard { name, value });
            }
        }
        if self.boundary_fraction <= 0.0 || self.boundary_fraction >= 0.5 {
            return Err(SpectralError::BadGuard {
                name: "boundary_fraction",
                value: self.boundary_fraction,
            });
        }
        Ok(())
    }
}

/// Uniform periodic grid with cached wavenumbers and FFT plans.
///
/// Grids are shared through [`Arc`]; fields keep a reference to the grid they
/// were built on, and binary operations check that both operands agree.
pub struct Grid {
    n: usize,
    length: f64,
    spacing: f64,
    x: Vec<f64>,
    xi: Vec<f64>,
    guards: Guards,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n", &self.n)
            .field("length", &self.length)
            .field("guards", &self.guards)
            .finish()
    }
}

impl Grid {
    /// Builds a grid with the default guards.
    pub fn new(n: usize, length: f64) -> Result<Arc<Grid>> {
        Grid::with_guards(n, length, Guards::default())
    }

    /// Builds a grid with explicit guard tolerances.
    pub fn with_guards(n: usize, length: f64, guards: Guards) -> Result<Arc<Grid>> {
        if n < 4 || !n.is_power_of_two() {
            return Err(SpectralError::BadSize(n));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(SpectralError::BadLength(length));
        }
        guards.validate()?;
        let spacing = length / n as f64;
        let x = (0..n).map(|j| -0.5 * length + j as f64 * spacing).collect();
        let dk = 2.0 * std::f64::consts::PI / length;
        let xi = (0..n).map(|j| mode_of(j, n) as f64 * dk).collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        Ok(Arc::new(Grid {
            n,
            length,
            spacing,
            x,
            xi,
            guards,
            forward,
            inverse,
        }))
    }

    /// Number of grid points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Box length `L`.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Grid spacing `h = L/n`.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Guard tolerances.
    pub fn guards(&self) -> &Guards {
        &self.guards
    }

    /// Sample positions `x_j = −L/2 + j·h`.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Wavenumbers `ξ` in FFT order.
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    /// Fundamental wavenumber `2π/L`.
    pub fn dk(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.length
    }

    /// Integer mode `m` stored at FFT index `j`.
    pub fn mode(&self, j: usize) -> i64 {
        mode_of(j, self.n)
    }

    /// True for the unpaired Nyquist slot `m = −n/2`.
    pub fn is_nyquist(&self, j: usize) -> bool {
        j == self.n / 2
    }

    /// Largest retained |m| under the 2/3 rule.
    pub fn dealias_cutoff(&self) -> i64 {
        (self.n / 3) as i64
    }

    /// In-place unnormalized forward transform.
    pub fn forward_in_place(&self, data: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.n);
        self.forward.process(data);
    }

    /// In-place inverse transform including the `1/n` factor.
    pub fn inverse_in_place(&self, data: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.n);
        self.inverse.process(data);
        let s = 1.0 / self.n as f64;
        for v in data.iter_mut() {
            *v *= s;
        }
    }

    /// Forward transform of real samples.
    pub fn fft_real(&self, samples: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward_in_place(&mut buf);
        buf
    }

    /// Forward transform of complex samples.
    pub fn fft(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.forward_in_place(&mut buf);
        buf
    }

    /// Inverse transform to complex samples.
    pub fn ifft(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut buf = coeffs.to_vec();
        self.inverse_in_place(&mut buf);
        buf
    }

    /// Inverse transform keeping only the real part (for Hermitian spectra).
    pub fn ifft_real(&self, coeffs: &[Complex64]) -> Vec<f64> {
        self.ifft(coeffs).into_iter().map(|c| c.re).collect()
    }

    /// Structural equality: same size and same length.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.n == other.n && self.length == other.length
    }

    /// Fails with [`SpectralError::GridMismatch`] unless both grids agree.
    pub fn check_same(&self, other: &Grid) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(SpectralError::GridMismatch {
                left_n: self.n,
                left_len: self.length,
                right_n: other.n,
                right_len: other.length,
            })
        }
    }

    /// Number of samples in each boundary band.
    pub fn boundary_width(&self) -> usize {
        ((self.guards.boundary_fraction * self.n as f64).ceil() as usize).max(1)
    }
}

fn mode_of(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}
