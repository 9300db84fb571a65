//! Dispersive decay diagnostics.
//!
//! Linear waves of `∂ₜφ + H∂²ₓφ = 0` travel with group velocity `2|ξ| ≥ 0`,
//! so the oscillatory (dispersive) region is `x > 0` and the left half-line
//! is elliptic. Against that geometry each snapshot `t > 0` is compared with
//!
//! * the point envelope `|φ| + |Hφ| ≲ ε t^{−1/2}⟨x₋t^{−1/2}⟩^{−1/2}`,
//!   `x₋ = max(−x, 0)`;
//! * its elliptic form `|φ| + |Hφ| ≲ ε t^{−1/4}|x|^{−1/2}` on `x ≤ −√t`;
//! * the primitive bound `|∂⁻¹φ(x)| ≲ ε + ε² log⟨t/x⟩`, where
//!   `∂⁻¹φ(x) = ∫_{−∞}^x φ` (cumulative trapezoid from the left edge);
//! * the plain sup bound `sup(|φ| + |Hφ|)·t^{1/2}/ε`.
//!
//! Ratios are maxima over `x` of measured value divided by envelope, with all
//! implicit constants set to 1. The sup-norm decay exponent is a log-log
//! least-squares fit.

use bo_evolution::Trajectory;
use bo_spectral::{hilbert, RealField};

use crate::error::{DiagnosticsError, Result};
use crate::fit::fit_power_law;

/// Per-snapshot decay measurements and the fitted sup-norm exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    /// Snapshot times used (`t > 0`).
    pub times: Vec<f64>,
    /// `sup|φ(t)|`.
    pub sup_norms: Vec<f64>,
    /// `sup|Hφ(t)|`.
    pub hilbert_sup_norms: Vec<f64>,
    /// Exponent `p` of the fit `sup|φ| ≈ C t^p` over the window.
    pub fitted_exponent: f64,
    /// RMS residual of that fit in log space.
    pub fit_residual: f64,
    /// Fit window actually requested.
    pub window: (f64, f64),
    /// `max_x (|φ| + |Hφ|)/(ε t^{−1/2}⟨x₋t^{−1/2}⟩^{−1/2})`.
    pub profile_ratios: Vec<f64>,
    /// `max_{x ≤ −√t} (|φ| + |Hφ|) t^{1/4}|x|^{1/2}/ε`; `None` when the box
    /// has no such points.
    pub elliptic_ratios: Vec<Option<f64>>,
    /// `max_x |∂⁻¹φ(x)|/(ε + ε² log⟨t/x⟩)`.
    pub intphi_ratios: Vec<f64>,
    /// `sup(|φ| + |Hφ|)·t^{1/2}/ε`.
    pub sup_ratios: Vec<f64>,
    /// Human-readable remarks (skipped snapshots, empty regions).
    pub notes: Vec<String>,
}

impl DecayReport {
    /// Largest profile ratio over all snapshots.
    pub fn max_profile_ratio(&self) -> f64 {
        self.profile_ratios.iter().copied().fold(0.0, f64::max)
    }

    /// Largest time up to which every profile ratio stays `≤ bound`.
    pub fn last_time_within(&self, bound: f64) -> Option<f64> {
        let mut last = None;
        for (t, r) in self.times.iter().zip(&self.profile_ratios) {
            if *r > bound {
                break;
            }
            last = Some(*t);
        }
        last
    }
}

/// `⟨y⟩ = (1 + y²)^{1/2}`.
fn japanese(y: f64) -> f64 {
    (1.0 + y * y).sqrt()
}

/// Point envelope `ε t^{−1/2}⟨x₋t^{−1/2}⟩^{−1/2}`.
pub fn point_envelope(x: f64, t: f64, eps: f64) -> f64 {
    let xm = (-x).max(0.0);
    eps / t.sqrt() / japanese(xm / t.sqrt()).sqrt()
}

/// `|φ| + |Hφ|` sampled on the grid.
fn amplitude(phi: &RealField) -> Vec<f64> {
    let h = hilbert(phi);
    phi.samples().iter().zip(h.samples()).map(|(a, b)| a.abs() + b.abs()).collect()
}

/// Pointwise ratio `(|φ| + |Hφ|)/point_envelope` on the grid.
pub fn profile_ratio_field(phi: &RealField, t: f64, eps: f64) -> Vec<f64> {
    amplitude(phi)
        .iter()
        .zip(phi.grid().x())
        .map(|(a, &x)| a / point_envelope(x, t, eps))
        .collect()
}

/// `∫_{−L/2}^{x} φ` by the cumulative trapezoid rule.
pub fn cumulative_primitive(phi: &RealField) -> Vec<f64> {
    let h = phi.grid().spacing();
    let s = phi.samples();
    let mut out = Vec::with_capacity(s.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in s.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// Refinement on the left half-line: with the analytic-signal modulus
/// `|ψ| = |φ + iHφ|` and `Q(x) = |ψ(x)|·t^{1/2}(1 + |x|t^{−1/2})^{1/4}`,
/// returns `max_{x<0} Q(x)/Q(0)` (`Q(0)` read at the grid point nearest 0).
pub fn left_refinement_ratio(phi: &RealField, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(DiagnosticsError::BadArgument(format!("time must be positive, got {t}")));
    }
    let h = hilbert(phi);
    let g = phi.grid();
    let q: Vec<f64> = phi
        .samples()
        .iter()
        .zip(h.samples())
        .zip(g.x())
        .map(|((a, b), x)| (a * a + b * b).sqrt() * t.sqrt() * (1.0 + x.abs() / t.sqrt()).powf(0.25))
        .collect();
    let origin = g
        .x()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let q0 = q[origin];
    if q0 == 0.0 {
        return Err(DiagnosticsError::ZeroField);
    }
    let left = g
        .x()
        .iter()
        .zip(&q)
        .filter(|(x, _)| **x < 0.0)
        .map(|(_, v)| *v)
        .fold(0.0, f64::max);
    Ok(left / q0)
}

/// Decay diagnostics of a trajectory with data size `ε`, fitting the
/// sup-norm exponent over the snapshots with `t ∈ window`.
pub fn decay_profile(traj: &Trajectory, eps: f64, window: (f64, f64)) -> Result<DecayReport> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(DiagnosticsError::BadArgument(format!("eps must be positive, got {eps}")));
    }
    let mut r = DecayReport {
        times: Vec::new(),
        sup_norms: Vec::new(),
        hilbert_sup_norms: Vec::new(),
        fitted_exponent: f64::NAN,
        fit_residual: f64::NAN,
        window,
        profile_ratios: Vec::new(),
        elliptic_ratios: Vec::new(),
        intphi_ratios: Vec::new(),
        sup_ratios: Vec::new(),
        notes: Vec::new(),
    };
    let mut skipped = 0;
    let mut empty_elliptic = 0;
    for (t, phi) in traj.snapshots() {
        let t = *t;
        if t <= 0.0 {
            skipped += 1;
            continue;
        }
        let x = phi.grid().x();
        let hphi = hilbert(phi);
        let amp = amplitude(phi);
        r.times.push(t);
        r.sup_norms.push(phi.peak());
        r.hilbert_sup_norms.push(hphi.peak());
        r.profile_ratios.push(
            amp.iter()
                .zip(x)
                .map(|(a, &x)| a / point_envelope(x, t, eps))
                .fold(0.0, f64::max),
        );
        let edge = -t.sqrt();
        let ell: Vec<f64> = amp
            .iter()
            .zip(x)
            .filter(|(_, &x)| x <= edge)
            .map(|(a, &x)| a * t.powf(0.25) * x.abs().sqrt() / eps)
            .collect();
        if ell.is_empty() {
            empty_elliptic += 1;
            r.elliptic_ratios.push(None);
        } else {
            r.elliptic_ratios.push(Some(ell.into_iter().fold(0.0, f64::max)));
        }
        r.intphi_ratios.push(
            cumulative_primitive(phi)
                .iter()
                .zip(x)
                .map(|(f, &x)| {
                    let log = if x == 0.0 { f64::INFINITY } else { japanese(t / x).ln() };
                    f.abs() / (eps + eps * eps * log)
                })
                .fold(0.0, f64::max),
        );
        r.sup_ratios
            .push(amp.iter().copied().fold(0.0, f64::max) * t.sqrt() / eps);
    }
    if skipped > 0 {
        r.notes.push(format!("skipped {skipped} snapshot(s) at t <= 0 (bounds vacuous)"));
    }
    if empty_elliptic > 0 {
        r.notes.push(format!(
            "{empty_elliptic} snapshot(s) have no grid points with x <= -sqrt(t)"
        ));
    }
    match fit_power_law(&r.times, &r.sup_norms, window) {
        Ok(f) => {
            r.fitted_exponent = f.slope;
            r.fit_residual = f.residual;
        }
        Err(e) => r.notes.push(format!("no exponent fit: {e}")),
    }
    Ok(r)
}
