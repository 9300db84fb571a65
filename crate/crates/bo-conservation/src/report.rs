//! Conservation and decay-bound reports along trajectories.

use bo_evolution::{push_forward_l, Trajectory};
use bo_spectral::{RealField, Result, SpectralError};

use crate::functionals::{mass, momentum, energy};
use crate::scaling::{scaling_functional, scaling_operator};

/// Denominator floor of [`relative_drift`].
pub const DRIFT_FLOOR: f64 = 1e-14;

/// `(max − min)/max(|mean|, 1e−14)` of a series; NaN if any value is NaN.
pub fn relative_drift(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    if values.iter().any(|v| v.is_nan()) {
        return f64::NAN;
    }
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (max - min) / mean.abs().max(DRIFT_FLOOR)
}

/// Functionals of one snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationRow {
    /// Snapshot time.
    pub time: f64,
    /// `E0`.
    pub mass: f64,
    /// `E1`.
    pub momentum: f64,
    /// `E2`.
    pub energy: f64,
    /// `‖𝓛φ‖²` (NaN when the order-1 localization guard fails).
    pub scaling_norm_sq: f64,
    /// `G(φ)` (NaN when the order-2 localization guard fails).
    pub scaling_functional: f64,
}

/// Relative drifts of each functional over a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drifts {
    /// Drift of `E0`.
    pub mass: f64,
    /// Drift of `E1`.
    pub momentum: f64,
    /// Drift of `E2`.
    pub energy: f64,
    /// Drift of `‖𝓛φ‖²`.
    pub scaling_norm_sq: f64,
    /// Drift of `G`.
    pub scaling_functional: f64,
}

/// Values and drifts of the conserved functionals along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservationReport {
    /// One row per snapshot.
    pub rows: Vec<ConservationRow>,
    /// Relative drifts.
    pub drifts: Drifts,
    /// Largest `|G − ‖𝓛φ‖²|/G` over the snapshots (NaN if unavailable).
    pub identity_residual: f64,
    /// Explanations for NaN entries.
    pub notes: Vec<String>,
}

fn guarded(value: Result<f64>, what: &str, time: f64, notes: &mut Vec<String>) -> Result<f64> {
    match value {
        Ok(v) => Ok(v),
        Err(SpectralError::NotLocalized { ratio, tol, order }) => {
            notes.push(format!(
                "t = {time}: {what} unavailable, order-{order} boundary ratio {ratio:e} exceeds {tol:e}"
            ));
            Ok(f64::NAN)
        }
        Err(e) => Err(e),
    }
}

/// Evaluates every functional of one field at time `t`.
pub fn conservation_row(phi: &RealField, t: f64, notes: &mut Vec<String>) -> Result<ConservationRow> {
    let scaling_norm_sq = guarded(
        scaling_operator(phi, t).map(|l| l.l2_norm().powi(2)),
        "‖𝓛φ‖²",
        t,
        notes,
    )?;
    let g = guarded(scaling_functional(phi, t), "G", t, notes)?;
    Ok(ConservationRow {
        time: t,
        mass: mass(phi),
        momentum: momentum(phi)?,
        energy: energy(phi)?,
        scaling_norm_sq,
        scaling_functional: g,
    })
}

/// Builds the conservation report of a trajectory. Fields that fail a
/// localization guard get NaN entries and a note rather than an error.
pub fn conservation_report(traj: &Trajectory) -> Result<ConservationReport> {
    let mut notes = Vec::new();
    let rows = traj
        .snapshots()
        .iter()
        .map(|(t, f)| conservation_row(f, *t, &mut notes))
        .collect::<Result<Vec<_>>>()?;
    let col = |f: fn(&ConservationRow) -> f64| rows.iter().map(f).collect::<Vec<_>>();
    let drifts = Drifts {
        mass: relative_drift(&col(|r| r.mass)),
        momentum: relative_drift(&col(|r| r.momentum)),
        energy: relative_drift(&col(|r| r.energy)),
        scaling_norm_sq: relative_drift(&col(|r| r.scaling_norm_sq)),
        scaling_functional: relative_drift(&col(|r| r.scaling_functional)),
    };
    let identity_residual = rows
        .iter()
        .map(|r| ((r.scaling_functional - r.scaling_norm_sq) / r.scaling_functional).abs())
        .fold(0.0_f64, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) });
    Ok(ConservationReport {
        rows,
        drifts,
        identity_residual,
        notes,
    })
}

/// `⟨a⟩ = (1 + a²)^{1/2}`.
pub fn japanese(a: f64) -> f64 {
    (1.0 + a * a).sqrt()
}

/// Growth and decay ratios of a trajectory against the bounds
/// `‖Lφ‖ ≲ ⟨t⟩` and `‖φ‖_∞ ≲ t^{−1/2}⟨t^{1/2}⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayBoundsReport {
    /// Snapshot times.
    pub times: Vec<f64>,
    /// `‖L(t)φ(t)‖_{L²}/⟨t⟩` with `L = x − 2tH∂ₓ` (NaN when the guard fails).
    pub l_ratios: Vec<f64>,
    /// `sup|φ(t)|·t^{1/2}/⟨t^{1/2}⟩`.
    pub sup_ratios: Vec<f64>,
    /// Largest finite `l_ratios` entry.
    pub max_l_ratio: f64,
    /// Largest `sup_ratios` entry.
    pub max_sup_ratio: f64,
    /// Explanations for NaN entries.
    pub notes: Vec<String>,
}

/// Measures both decay-bound ratios on every snapshot.
pub fn decay_bounds_check(traj: &Trajectory) -> bo_evolution::Result<DecayBoundsReport> {
    let mut notes = Vec::new();
    let mut times = Vec::new();
    let mut l_ratios = Vec::new();
    let mut sup_ratios = Vec::new();
    for (t, f) in traj.snapshots() {
        let lnorm = guarded(
            push_forward_l(f, *t).map(|l| l.l2_norm()).map_err(|e| match e {
                bo_evolution::EvolutionError::Spectral(s) => s,
                other => SpectralError::BadSnapshot(other.to_string()),
            }),
            "‖Lφ‖",
            *t,
            &mut notes,
        )?;
        times.push(*t);
        l_ratios.push(lnorm / japanese(*t));
        sup_ratios.push(f.peak() * t.sqrt() / japanese(t.sqrt()));
    }
    let max_finite = |v: &[f64]| v.iter().cloned().filter(|x| x.is_finite()).fold(f64::NAN, f64::max);
    Ok(DecayBoundsReport {
        max_l_ratio: max_finite(&l_ratios),
        max_sup_ratio: max_finite(&sup_ratios),
        times,
        l_ratios,
        sup_ratios,
        notes,
    })
}
