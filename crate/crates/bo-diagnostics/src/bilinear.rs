//! The translation-sup bilinear functional
//! `sup_y ‖ψ¹·T_yψ²‖_{L²_{t,x}}`, `T_yf(x) = f(x − y)`, for two trajectories
//! localized at different frequencies.
//!
//! Each shift is rounded to the nearest multiple of the grid spacing, so the
//! translation is an exact rotation of samples; the space integral is the
//! grid quadrature and the time integral the trapezoid rule on the common
//! snapshot times. All shifts are evaluated at once through one circular
//! correlation of `|ψ¹|²` and `|ψ²|²`. The supremum is taken over a finite shift set, so the
//! value is a lower bound for the true supremum. It is reported next to the
//! reference scale `2^{−max(j,k)/2}‖ψ¹(0)‖‖ψ²(0)‖`.

use bo_evolution::Trajectory;
use bo_spectral::{Complex64, Grid};

use crate::error::{DiagnosticsError, Result};
use crate::strichartz::trapezoid_weights;

/// Coefficients below this fraction of the largest one count as outside the
/// spectral support when separation is measured.
const SUPPORT_TOL: f64 = 1e-8;

/// The frequency localization declared for the two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandPair {
    /// Dyadic bands `|ξ| ≈ 2^j` and `|ξ| ≈ 2^k` with `j ≠ k`.
    Distinct {
        /// Band of the first factor.
        j: i64,
        /// Band of the second factor.
        k: i64,
    },
    /// Both factors at `|ξ| ≈ 2^k`, with `|ξ|`-supports at least `2^{k−4}`
    /// apart (checked on the initial snapshots).
    Separated {
        /// Common band.
        k: i64,
    },
}

impl BandPair {
    /// The larger of the two bands.
    pub fn high(&self) -> i64 {
        match *self {
            BandPair::Distinct { j, k } => j.max(k),
            BandPair::Separated { k } => k,
        }
    }
}

/// Result of [`bilinear_functional`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearReport {
    /// Sampled supremum over the shifts.
    pub value: f64,
    /// Shift attaining it (after rounding to the grid).
    pub best_shift: f64,
    /// `2^{−max(j,k)/2}‖ψ¹(0)‖‖ψ²(0)‖`.
    pub reference: f64,
    /// `value / reference` (0 when both vanish).
    pub ratio: f64,
    /// Number of shifts sampled.
    pub shifts: usize,
}

/// The grid translation `s` (in samples) nearest to `y`.
fn grid_shift(grid: &Grid, y: f64) -> i64 {
    (y / grid.spacing()).round() as i64
}

/// `count` evenly spaced shifts `y_i = −L/2 + iL/count`.
pub fn default_shifts(grid: &Grid, count: usize) -> Vec<f64> {
    let l = grid.length();
    (0..count).map(|i| -0.5 * l + i as f64 * l / count as f64).collect()
}

/// Distance between the `|ξ|`-supports of two spectra.
pub fn support_separation(grid: &Grid, a: &[Complex64], b: &[Complex64]) -> f64 {
    let support = |c: &[Complex64]| -> Vec<f64> {
        let top = c.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
        let mut s: Vec<f64> = c
            .iter()
            .zip(grid.xi())
            .filter(|(v, _)| top > 0.0 && v.norm() > SUPPORT_TOL * top)
            .map(|(_, xi)| xi.abs())
            .collect();
        s.sort_by(f64::total_cmp);
        s.dedup();
        s
    };
    let (sa, sb) = (support(a), support(b));
    if sa.is_empty() || sb.is_empty() {
        return f64::INFINITY;
    }
    let mut best = f64::INFINITY;
    let mut i = 0;
    for &x in &sa {
        while i + 1 < sb.len() && sb[i + 1] <= x {
            i += 1;
        }
        best = best.min((sb[i] - x).abs());
        if i + 1 < sb.len() {
            best = best.min((sb[i + 1] - x).abs());
        }
    }
    best
}

/// `sup_{y ∈ shifts} ‖a·T_yb‖_{L²_{t,x}}` for two trajectories on the same
/// grid and the same snapshot times.
pub fn bilinear_functional(
    a: &Trajectory,
    b: &Trajectory,
    pair: BandPair,
    shifts: &[f64],
) -> Result<BilinearReport> {
    let g = a.grid().clone();
    g.check_same(b.grid())?;
    let times = a.times();
    let tb = b.times();
    if times.len() != tb.len() || times.iter().zip(&tb).any(|(x, y)| (x - y).abs() > 1e-12 * (1.0 + x.abs())) {
        return Err(DiagnosticsError::BadArgument("trajectories have different snapshot times".into()));
    }
    if shifts.is_empty() {
        return Err(DiagnosticsError::BadArgument("empty shift set".into()));
    }
    let a0 = &a.snapshots()[0].1;
    let b0 = &b.snapshots()[0].1;
    match pair {
        BandPair::Distinct { j, k } if j == k => {
            return Err(DiagnosticsError::BadArgument(format!(
                "equal bands j = k = {k} must be declared as separated"
            )));
        }
        BandPair::Distinct { .. } => {}
        BandPair::Separated { k } => {
            let found = support_separation(&g, a0.dft().coeffs(), b0.dft().coeffs());
            let required = 2f64.powi(k as i32 - 4);
            if found < required {
                return Err(DiagnosticsError::NotSeparated { found, required });
            }
        }
    }
    let reference = 2f64.powf(-0.5 * pair.high() as f64) * a0.l2_norm() * b0.l2_norm();
    let w = trapezoid_weights(&times);
    let n = g.n();
    let h = g.spacing();
    // Σ_t w_t·F[a_t²]·conj(F[b_t²]); its inverse transform at index s is the
    // weighted correlation Σ_t w_t Σ_x a_t(x)² b_t(x − s·h)².
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    for (wt, ((_, fa), (_, fb))) in w.iter().zip(a.snapshots().iter().zip(b.snapshots())) {
        if *wt == 0.0 {
            continue;
        }
        let sa: Vec<f64> = fa.samples().iter().map(|v| v * v).collect();
        let sb: Vec<f64> = fb.samples().iter().map(|v| v * v).collect();
        let (ha, hb) = (g.fft_real(&sa), g.fft_real(&sb));
        for ((c, x), y) in acc.iter_mut().zip(&ha).zip(&hb) {
            *c += *wt * x * y.conj();
        }
    }
    let corr = g.ifft(&acc);
    let mut value = 0.0;
    let mut best_shift = grid_shift(&g, shifts[0]) as f64 * h;
    for &y in shifts {
        let s = grid_shift(&g, y);
        let v = (h * corr[s.rem_euclid(n as i64) as usize].re).max(0.0).sqrt();
        if v > value {
            value = v;
            best_shift = s as f64 * h;
        }
    }
    let ratio = if reference == 0.0 {
        if value == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        value / reference
    };
    Ok(BilinearReport {
        value,
        best_shift,
        reference,
        ratio,
        shifts: shifts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn separation_of_disjoint_supports() {
        let g = Grid::new(64, 2.0 * PI).unwrap();
        let mut a = vec![Complex64::new(0.0, 0.0); 64];
        let mut b = a.clone();
        a[3] = Complex64::new(1.0, 0.0);
        a[61] = Complex64::new(1.0, 0.0);
        b[10] = Complex64::new(0.0, 1.0);
        assert!((support_separation(&g, &a, &b) - 7.0).abs() < 1e-12);
        assert!(support_separation(&g, &a, &vec![Complex64::new(0.0, 0.0); 64]).is_infinite());
    }

    #[test]
    fn default_shifts_cover_the_box() {
        let g = Grid::new(64, 33.0).unwrap();
        let s = default_shifts(&g, 33);
        assert_eq!(s.len(), 33);
        assert!((s[0] + 16.5).abs() < 1e-12 && (s[1] - s[0] - 1.0).abs() < 1e-12);
    }
}
