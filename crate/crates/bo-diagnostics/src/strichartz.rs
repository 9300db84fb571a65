//! Discrete Strichartz norms `S = L^∞_t L²_x ∩ L⁴_t L^∞_x` of a sampled
//! trajectory.
//!
//! The `L^∞_t` norm is the maximum over snapshots; the `L⁴_t` norm is the
//! trapezoid rule applied to `sup_x|φ(t)|⁴` on the snapshot times, so a
//! constant-in-time field over `[0, T]` gives exactly `T^{1/4}·sup|φ|`.

use bo_evolution::Trajectory;
use bo_spectral::projection::band_symbol;
use bo_spectral::RealField;

use crate::error::{DiagnosticsError, Result};

/// Relative tolerance on the spacing of snapshot times.
const UNIFORM_TOL: f64 = 1e-6;

/// The Strichartz norms of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrichartzNorms {
    /// `max_t ‖φ(t)‖_{L²}`.
    pub linf_l2: f64,
    /// `(∫ sup_x|φ|⁴ dt)^{1/4}`.
    pub l4_linf: f64,
    /// `‖φ‖_S = max(linf_l2, l4_linf)`.
    pub s: f64,
}

/// Trapezoid weights for sample times.
pub(crate) fn trapezoid_weights(times: &[f64]) -> Vec<f64> {
    let n = times.len();
    let mut w = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let h = times[i + 1] - times[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    w
}

fn check_uniform(times: &[f64]) -> Result<()> {
    if times.len() < 3 {
        return Ok(());
    }
    let h = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    for w in times.windows(2) {
        if ((w[1] - w[0]) - h).abs() > UNIFORM_TOL * h {
            return Err(DiagnosticsError::BadArgument(format!(
                "snapshot times are not uniformly spaced (step {} vs mean {h})",
                w[1] - w[0]
            )));
        }
    }
    Ok(())
}

fn norms_of(times: &[f64], fields: &[&RealField]) -> Result<StrichartzNorms> {
    if fields.is_empty() {
        return Err(DiagnosticsError::BadArgument("empty trajectory".into()));
    }
    check_uniform(times)?;
    let linf_l2 = fields.iter().map(|f| f.l2_norm()).fold(0.0, f64::max);
    let w = trapezoid_weights(times);
    let l4_linf = w
        .iter()
        .zip(fields)
        .map(|(w, f)| w * f.peak().powi(4))
        .sum::<f64>()
        .powf(0.25);
    Ok(StrichartzNorms {
        linf_l2,
        l4_linf,
        s: linf_l2.max(l4_linf),
    })
}

/// Strichartz norms of a uniformly sampled trajectory.
pub fn strichartz_norms(traj: &Trajectory) -> Result<StrichartzNorms> {
    let times = traj.times();
    let fields: Vec<&RealField> = traj.snapshots().iter().map(|(_, f)| f).collect();
    norms_of(&times, &fields)
}

/// Strichartz norms restricted to the snapshots with `t ∈ [t0, t1]`.
pub fn strichartz_norms_window(traj: &Trajectory, t0: f64, t1: f64) -> Result<StrichartzNorms> {
    let (times, fields): (Vec<f64>, Vec<&RealField>) = traj
        .snapshots()
        .iter()
        .filter(|(t, _)| *t >= t0 && *t <= t1)
        .map(|(t, f)| (*t, f))
        .unzip();
    norms_of(&times, &fields)
}

/// The Besov-type refinement `ℓ²S = (Σ_k ‖P_kφ‖_S²)^{1/2}` over the dyadic
/// bands `k = 0..=k_max` of the grid.
pub fn besov_strichartz_norm(traj: &Trajectory) -> Result<f64> {
    let times = traj.times();
    let g = traj.grid().clone();
    let max_xi = g.xi().iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut total = 0.0;
    let mut k = 0i64;
    loop {
        if 2f64.powi(k as i32 - 1) >= max_xi {
            break;
        }
        let sym: Vec<f64> = g.xi().iter().map(|&xi| band_symbol(k, xi)).collect();
        let pieces: Vec<RealField> = traj
            .snapshots()
            .iter()
            .map(|(_, f)| {
                let c: Vec<_> = f.dft().coeffs().iter().zip(&sym).map(|(c, s)| c * s).collect();
                RealField::new(&g, g.ifft_real(&c))
            })
            .collect::<std::result::Result<_, _>>()?;
        let refs: Vec<&RealField> = pieces.iter().collect();
        total += norms_of(&times, &refs)?.s.powi(2);
        k += 1;
    }
    Ok(total.sqrt())
}
