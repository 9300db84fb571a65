//! Convergence of frequency-truncated solutions.
//!
//! For each `n` the data are truncated to `φ^{(n)}(0) = P_{<n}φ₀` and evolved
//! with the same options; the distance to a reference run truncated at
//! `max(n) + 2` is `sup_t ‖φ^{(n)}(t) − φ^{ref}(t)‖_{H^{−1/2}}` over the
//! common snapshots, with the inhomogeneous weight `⟨ξ⟩^{−1/2}`.

use bo_evolution::{evolve, EvolveOptions, Trajectory};
use bo_spectral::{project_real, sobolev_norm, Projector, RealField};

use crate::error::{DiagnosticsError, Result};
use crate::fit::fit_line;

/// Slack allowed by the monotonicity check (10%).
const MONOTONE_SLACK: f64 = 1.1;

/// Result of [`convergence_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Truncation indices `n`.
    pub ns: Vec<i64>,
    /// Index of the reference run.
    pub reference_n: i64,
    /// `sup_t ‖φ^{(n)} − φ^{ref}‖_{H^{−1/2}}` per `n`.
    pub differences: Vec<f64>,
    /// Slope of `log₂ difference` against `n` (NaN with fewer than two
    /// positive differences).
    pub slope: f64,
    /// RMS residual of that fit.
    pub fit_residual: f64,
    /// Whether each difference is at most 1.1× the previous one.
    pub monotone: bool,
}

/// Data truncated to `P_{<n}`.
pub fn truncate(phi0: &RealField, n: i64) -> Result<RealField> {
    Ok(project_real(phi0, Projector::Below(n))?)
}

/// `sup` over common snapshots of the `H^{−1/2}` distance.
pub fn sup_h_minus_half(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    if a.snapshots().len() != b.snapshots().len() {
        return Err(DiagnosticsError::BadArgument("trajectories have different lengths".into()));
    }
    let mut sup = 0.0_f64;
    for ((ta, fa), (tb, fb)) in a.snapshots().iter().zip(b.snapshots()) {
        if (ta - tb).abs() > 1e-12 * (1.0 + ta.abs()) {
            return Err(DiagnosticsError::BadArgument(format!("snapshot times differ: {ta} vs {tb}")));
        }
        sup = sup.max(sobolev_norm(&fa.sub(fb)?, -0.5));
    }
    Ok(sup)
}

/// Runs the truncation experiment for every `n` in `ns` (each `n ≥ 1`).
pub fn convergence_experiment(phi0: &RealField, ns: &[i64], opts: &EvolveOptions) -> Result<ConvergenceReport> {
    if ns.is_empty() || ns.iter().any(|&n| n < 1) {
        return Err(DiagnosticsError::BadArgument(format!(
            "truncation indices must be a non-empty list of n >= 1, got {ns:?}"
        )));
    }
    let reference_n = ns.iter().copied().max().unwrap_or(1) + 2;
    let reference = evolve(&truncate(phi0, reference_n)?, opts, None)?;
    let differences = ns
        .iter()
        .map(|&n| {
            let run = evolve(&truncate(phi0, n)?, opts, None)?;
            sup_h_minus_half(&run, &reference)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = ns
        .iter()
        .zip(&differences)
        .filter(|(_, d)| **d > 0.0)
        .map(|(n, d)| (*n as f64, d.log2()))
        .unzip();
    let (slope, fit_residual) = match fit_line(&xs, &ys) {
        Ok(f) => (f.slope, f.residual),
        Err(_) => (f64::NAN, f64::NAN),
    };
    let monotone = differences.windows(2).all(|w| w[1] <= MONOTONE_SLACK * w[0]);
    Ok(ConvergenceReport {
        ns: ns.to_vec(),
        reference_n,
        differences,
        slope,
        fit_residual,
        monotone,
    })
}
