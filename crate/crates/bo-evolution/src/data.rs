//! Reference initial data: the traveling wave, Gaussians, and seeded random
//! localized fields, plus the data functional `‖φ‖_{L²} + ‖xφ‖_{L²}`.
//!
//! # Traveling wave
//!
//! On the line, `Q_c(x) = 4c/(1 + c²x²)` solves
//! `φ_t + H∂²ₓφ = ½∂ₓ(φ²)` as `φ(t, x) = Q_c(x + ct)`: it moves to the left
//! with speed `c` and peak `4c`. On a box of length `L` the exact periodic
//! traveling wave with the same orientation is the periodized profile
//!
//! ```text
//! Q_c^L(x) = 2κ(1 − r²) / (1 − 2r cos κx + r²),   κ = 2π/L,  r = e^{−κ/c},
//! ```
//!
//! which moves left with speed `κ·coth(κ/c)` (→ `c` as `L → ∞`), has mean
//! `2κ`, and Fourier coefficients `2κ·r^{|m|}`. This is the profile returned
//! by [`soliton`]; its validity is checked by substitution in the tests.

use std::sync::Arc;

use bo_spectral::{weighted_l2, Grid, RealField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EvolutionError, Result};

/// Parameters of the periodic traveling wave on a given box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonProfile {
    /// Line speed parameter `c` (peak `≈ 4c`).
    pub c: f64,
    /// `κ = 2π/L`.
    pub kappa: f64,
    /// `r = e^{−κ/c}`.
    pub r: f64,
    /// Leftward speed `κ·coth(κ/c)` on the box.
    pub speed: f64,
}

/// Largest accepted Fourier tail `r^{n/3}` (resolution of the profile and of
/// its de-aliased square).
pub const SOLITON_TAIL_TOL: f64 = 1e-13;

/// Largest accepted ratio of edge value to peak, `((1 − r)/(1 + r))²`.
pub const SOLITON_FIT_TOL: f64 = 1e-2;

impl SolitonProfile {
    /// Validates `c` against the grid and computes the profile constants.
    pub fn new(c: f64, grid: &Grid) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(EvolutionError::BadProfile(format!("speed parameter must be positive, got {c}")));
        }
        let kappa = grid.dk();
        let r = (-kappa / c).exp();
        let tail = r.powf(grid.n() as f64 / 3.0);
        if tail > SOLITON_TAIL_TOL {
            return Err(EvolutionError::BadProfile(format!(
                "profile too narrow for the grid: spectral tail r^(n/3) = {tail:e} exceeds {SOLITON_TAIL_TOL:e}"
            )));
        }
        let fit = ((1.0 - r) / (1.0 + r)).powi(2);
        if fit > SOLITON_FIT_TOL {
            return Err(EvolutionError::BadProfile(format!(
                "profile too wide for the box: edge/peak ratio {fit:e} exceeds {SOLITON_FIT_TOL:e}"
            )));
        }
        let speed = kappa / (kappa / c).tanh();
        Ok(SolitonProfile { c, kappa, r, speed })
    }

    /// Profile value at signed distance `y` from the crest.
    pub fn value(&self, y: f64) -> f64 {
        let r = self.r;
        2.0 * self.kappa * (1.0 - r * r) / (1.0 - 2.0 * r * (self.kappa * y).cos() + r * r)
    }

    /// The exact solution at time `t` for a crest initially at `x0`.
    pub fn at_time(&self, x0: f64, t: f64, grid: &Arc<Grid>) -> Result<RealField> {
        let shift = x0 - self.speed * t;
        Ok(RealField::from_fn(grid, |x| self.value(x - shift))?)
    }
}

/// The traveling wave with crest at `x0` (see the module docs).
pub fn soliton(c: f64, x0: f64, grid: &Arc<Grid>) -> Result<RealField> {
    SolitonProfile::new(c, grid)?.at_time(x0, 0.0, grid)
}

/// The line profile `Q_c(y) = 4c/(1 + c²y²)`.
pub fn line_soliton(c: f64, y: f64) -> f64 {
    4.0 * c / (1.0 + c * c * y * y)
}

/// `a·e^{−(x − x0)²/w²}`.
pub fn gaussian(amplitude: f64, width: f64, x0: f64, grid: &Arc<Grid>) -> Result<RealField> {
    if !width.is_finite() || width <= 0.0 {
        return Err(EvolutionError::BadProfile(format!("width must be positive, got {width}")));
    }
    if width < 2.0 * grid.spacing() {
        return Err(EvolutionError::BadProfile(format!(
            "width {width} under-resolved by spacing {}",
            grid.spacing()
        )));
    }
    Ok(RealField::from_fn(grid, |x| {
        let y = (x - x0) / width;
        amplitude * (-y * y).exp()
    })?)
}

/// The data functional `‖f‖_{L²} + ‖xf‖_{L²}` (x-weight guarded).
pub fn data_norm(f: &RealField) -> Result<f64> {
    Ok(f.l2_norm() + weighted_l2(f, 1)?)
}

/// Rescales `f` so that the data functional equals `eps`.
pub fn normalize_data(f: &RealField, eps: f64) -> Result<RealField> {
    let n = data_norm(f)?;
    if n == 0.0 {
        return Err(EvolutionError::BadProfile("cannot normalize the zero field".into()));
    }
    Ok(f.scale(eps / n))
}

/// Gaussian of width `w` centered at `x0`, normalized to data functional `eps`.
pub fn gaussian_normalized(eps: f64, width: f64, x0: f64, grid: &Arc<Grid>) -> Result<RealField> {
    normalize_data(&gaussian(1.0, width, x0, grid)?, eps)
}

/// Number of bumps in [`random_localized`].
pub const RANDOM_BUMPS: usize = 4;

/// Seeded random localized field, exactly mean-zero and normalized to data
/// functional `eps`.
///
/// The field is a sum of [`RANDOM_BUMPS`] derivatives of Gaussians
/// `a_j ∂ₓ e^{−(x − x_j)²/w_j²}` with `a_j ∈ [−1, 1]`, `x_j ∈ [−3, 3]` and
/// `w_j ∈ [2, 3]`, drawn from ChaCha8 seeded with `seed`. Widths of at least
/// 2 keep the spectrum below `e^{−28}` beyond `|ξ| = 16/3`, so cubic and
/// quartic products are exactly representable on the reference grid.
pub fn random_localized(seed: u64, eps: f64, grid: &Arc<Grid>) -> Result<RealField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bumps: Vec<(f64, f64, f64)> = (0..RANDOM_BUMPS)
        .map(|_| {
            let a = rng.gen_range(-1.0..1.0);
            let x0 = rng.gen_range(-3.0..3.0);
            let w = rng.gen_range(2.0..3.0);
            (a, x0, w)
        })
        .collect();
    let f = RealField::from_fn(grid, |x| {
        bumps
            .iter()
            .map(|&(a, x0, w)| {
                let y = x - x0;
                -2.0 * a * y / (w * w) * (-(y * y) / (w * w)).exp()
            })
            .sum()
    })?;
    normalize_data(&f, eps)
}

/// Seeded random band-limited field concentrated near dyadic scale `2^k`,
/// with peak amplitude `amplitude`.
///
/// Modes `1 ≤ m < n/12` receive coefficients `z_m·e^{−(ξ_m/2^{k+1})²}` with
/// `Re z, Im z` uniform in `[−1, 1]` (ChaCha8 seeded with `seed`); the field
/// is real, exactly mean-zero, and quartic products of it are exactly
/// representable on the grid. Intended for the normal-form identities, which
/// do not need spatial localization.
pub fn random_band_limited(seed: u64, k: u32, amplitude: f64, grid: &Arc<Grid>) -> Result<RealField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.n();
    let mut coeffs = vec![bo_spectral::Complex64::new(0.0, 0.0); n];
    let scale = 2f64.powi(k as i32 + 1);
    for m in 1..n / 12 {
        let xi = grid.xi()[m];
        let env = (-(xi / scale).powi(2)).exp();
        let z = bo_spectral::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * env;
        coeffs[m] = z;
        coeffs[n - m] = z.conj();
    }
    let f = bo_spectral::SpectralField::new(grid, coeffs, true)?.to_real()?;
    let peak = f.peak();
    if peak == 0.0 {
        return Err(EvolutionError::BadProfile("grid too coarse for band-limited data".into()));
    }
    Ok(f.scale(amplitude / peak))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn soliton_peak_and_mean() {
        let g = Grid::new(4096, 256.0 * PI).unwrap();
        let p = SolitonProfile::new(0.25, &g).unwrap();
        let f = soliton(0.25, 0.0, &g).unwrap();
        assert!((f.peak() - p.value(0.0)).abs() < 1e-15);
        assert!((p.value(0.0) - 1.0).abs() < 1e-3);
        assert!((f.mean() - 2.0 * p.kappa).abs() < 1e-14);
        assert!((p.speed - 0.25).abs() < 1e-4);
    }

    #[test]
    fn soliton_rejects_bad_parameters() {
        let g = Grid::new(4096, 256.0 * PI).unwrap();
        assert!(soliton(-1.0, 0.0, &g).is_err());
        assert!(soliton(2.0, 0.0, &g).is_err(), "too narrow");
        assert!(soliton(0.005, 0.0, &g).is_err(), "too wide");
    }

    #[test]
    fn band_limited_fields_are_real_mean_zero_and_scaled() {
        let g = Grid::new(1024, 2.0 * PI).unwrap();
        let f = random_band_limited(3, 4, 0.05, &g).unwrap();
        assert!((f.peak() - 0.05).abs() < 1e-15);
        assert!(f.mean().abs() < 1e-17 * 1024.0);
        let spec = f.dft();
        for (j, c) in spec.coeffs().iter().enumerate() {
            if g.mode(j).unsigned_abs() as usize >= 1024 / 12 {
                assert!(c.norm() < 1e-14);
            }
        }
        assert_eq!(f.samples(), random_band_limited(3, 4, 0.05, &g).unwrap().samples());
    }

    #[test]
    fn random_fields_are_reproducible_and_normalized() {
        let g = Grid::new(1024, 64.0 * PI).unwrap();
        let a = random_localized(7, 0.1, &g).unwrap();
        let b = random_localized(7, 0.1, &g).unwrap();
        let c = random_localized(8, 0.1, &g).unwrap();
        assert_eq!(a.samples(), b.samples());
        assert_ne!(a.samples(), c.samples());
        assert!((data_norm(&a).unwrap() - 0.1).abs() < 1e-14);
        assert!(a.mean().abs() < 1e-15);
    }
}
