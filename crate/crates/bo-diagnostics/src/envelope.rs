//! Minimal slowly varying frequency envelopes.
//!
//! With `a_k = ‖P_kφ‖/‖φ‖` (and `P_0 = P_{≤0}`), an admissible envelope
//! `(c_k)_{k≥0}` satisfies
//!
//! 1. `c_k ≥ a_k` (it dominates the dyadic profile),
//! 2. `c_j/c_k ≤ 2^{δ|j−k|}` for all `j, k` (it is slowly varying),
//! 3. `c_0 ≥ 1` (the low-frequency floor `c_0 ≈ 1`).
//!
//! The smallest such sequence is
//! `c_k = max(max_j 2^{−δ|j−k|}a_j, 2^{−δk})`: the floor term is the slow
//! variation forced by `c_0 = 1`. Lowering any single entry breaks one of
//! the three conditions.

use bo_spectral::projection::band_symbol;
use bo_spectral::RealField;

use crate::error::{DiagnosticsError, Result};

/// Relative slack used when the conditions are verified by scan.
const SCAN_TOL: f64 = 1e-12;

/// The minimal envelope of one field.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    /// Slow-variation exponent `δ`.
    pub delta: f64,
    /// Dyadic indices `0..=k_max` covering the grid's frequencies.
    pub ks: Vec<i64>,
    /// Envelope values `c_k`.
    pub c: Vec<f64>,
    /// Raw dyadic norms `‖P_kφ‖_{L²}`.
    pub norms: Vec<f64>,
    /// `‖φ‖_{L²}`.
    pub total: f64,
    /// `Σ c_k²`.
    pub sum_sq: f64,
    /// Whether the three conditions hold (checked by a full scan).
    pub admissible: bool,
}

impl EnvelopeReport {
    /// Normalized dyadic norms `a_k = ‖P_kφ‖/‖φ‖`.
    pub fn ratios(&self) -> Vec<f64> {
        self.norms.iter().map(|v| v / self.total).collect()
    }
}

/// Largest dyadic index whose band meets the grid's frequencies.
fn top_index(max_xi: f64) -> i64 {
    let mut k = 0;
    while 2f64.powi(k as i32) < max_xi {
        k += 1;
    }
    k
}

/// Dyadic norms `‖P_kφ‖` for `k = 0..=k_max` and the total `‖φ‖`.
pub fn dyadic_norms(phi: &RealField) -> (Vec<f64>, f64) {
    let g = phi.grid();
    let coeffs = phi.dft();
    let n = g.n() as f64;
    let w = g.length() / (n * n);
    let max_xi = g.xi().iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let norms = (0..=top_index(max_xi))
        .map(|k| {
            let s: f64 = coeffs
                .coeffs()
                .iter()
                .zip(g.xi())
                .map(|(c, &xi)| (band_symbol(k, xi) * c).norm_sqr())
                .sum();
            (w * s).sqrt()
        })
        .collect();
    (norms, phi.l2_norm())
}

/// Checks the three envelope conditions for `c` against the profile `a`.
pub fn is_admissible(c: &[f64], a: &[f64], delta: f64) -> bool {
    if c.len() != a.len() || c.is_empty() {
        return false;
    }
    let dominates = c.iter().zip(a).all(|(c, a)| *c >= a * (1.0 - SCAN_TOL));
    let slow = (0..c.len()).all(|j| {
        (0..c.len()).all(|k| c[j] <= c[k] * 2f64.powf(delta * (j as f64 - k as f64).abs()) * (1.0 + SCAN_TOL))
    });
    dominates && slow && c[0] >= 1.0 - SCAN_TOL
}

/// The minimal admissible envelope of a dyadic profile `a_k`, `k = 0, 1, …`.
pub fn envelope_from_ratios(a: &[f64], delta: f64) -> Vec<f64> {
    (0..a.len())
        .map(|k| {
            let floor = 2f64.powf(-delta * k as f64);
            a.iter()
                .enumerate()
                .map(|(j, aj)| 2f64.powf(-delta * (j as f64 - k as f64).abs()) * aj)
                .fold(floor, f64::max)
        })
        .collect()
}

/// The minimal admissible envelope of `φ` with slow-variation exponent
/// `δ > 0`.
pub fn minimal_envelope(phi: &RealField, delta: f64) -> Result<EnvelopeReport> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(DiagnosticsError::BadArgument(format!(
            "delta must be finite and positive, got {delta}"
        )));
    }
    let (norms, total) = dyadic_norms(phi);
    if total == 0.0 {
        return Err(DiagnosticsError::ZeroField);
    }
    let a: Vec<f64> = norms.iter().map(|v| v / total).collect();
    let c = envelope_from_ratios(&a, delta);
    let admissible = is_admissible(&c, &a, delta);
    Ok(EnvelopeReport {
        delta,
        ks: (0..a.len() as i64).collect(),
        sum_sq: c.iter().map(|v| v * v).sum(),
        c,
        norms,
        total,
        admissible,
    })
}
