//! Subcommands built on exact linear flows and static fields.

use std::sync::Arc;

use bo_diagnostics::{bilinear_functional, decay_profile, default_shifts, minimal_envelope, BandPair};
use bo_evolution::{linear_propagate, push_forward_l, random_localized, Trajectory};
use bo_spectral::{hilbert, project_real, Grid, Projector, RealField};

use super::dynamics::{decay_table, max_left_refinement};
use super::{exact_trajectory, sample_times, Ctx};
use crate::checks::Bound;
use crate::config::BilinearParams;
use crate::error::RunError;
use crate::output::Table;
use crate::parallel::{parallel_map, thread_cap};

/// `K = sup(|ψ| + |Hψ|)·√t / (‖ψ‖·‖Lψ‖)^{1/2}` with `L = x − 2tH∂ₓ`.
pub(crate) fn interpolation_constant(psi: &RealField, t: f64) -> Result<f64, RunError> {
    let h = hilbert(psi);
    let sup = psi
        .samples()
        .iter()
        .zip(h.samples())
        .fold(0.0_f64, |m, (a, b)| m.max(a.abs() + b.abs()));
    let l = push_forward_l(psi, t)?.l2_norm();
    Ok(sup * t.sqrt() / (psi.l2_norm() * l).sqrt())
}

pub(crate) fn linear(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let grid = ctx.grid()?;
    if let Some(params) = ctx.cfg.diagnostics.decay.clone() {
        let f0 = ctx.initial(&grid)?;
        let eps = match params.eps {
            Some(e) => e,
            None => bo_evolution::data_norm(&f0)?,
        };
        let window = (params.window[0], params.window[1]);
        let traj = exact_trajectory(&grid, "exact-linear", &sample_times(ctx.cfg), |t| Ok(linear_propagate(&f0, t)))?;
        let rep = decay_profile(&traj, eps, window)?;
        ctx.sink.table("linear_decay", &decay_table(&rep))?;
        let both = bo_diagnostics::fit_power_law(
            &rep.times,
            &rep.sup_norms.iter().zip(&rep.hilbert_sup_norms).map(|(a, b)| a + b).collect::<Vec<_>>(),
            window,
        )?;
        ctx.check(
            "decay_exponent",
            "fitted exponent of sup|psi| for the linear flow",
            rep.fitted_exponent,
            Bound::Within {
                target: params.exponent,
                tol: params.exponent_tol,
            },
            format!(
                "window [{}, {}], fit residual {:e}; exponent of sup|psi| + sup|H psi|: {}",
                window.0, window.1, rep.fit_residual, both.slope
            ),
        );
        if let Some(max) = params.max_profile_ratio {
            ctx.check(
                "profile_ratio",
                "largest ratio of |psi| + |H psi| to the pointwise decay envelope",
                rep.max_profile_ratio(),
                Bound::AtMost(max),
                format!("eps = {eps}"),
            );
        }
        ctx.check(
            "left_refinement",
            "largest refined left-region bound relative to its value at x = 0",
            max_left_refinement(&traj)?,
            Bound::AtMost(10.0),
            String::new(),
        );
    }
    if let Some(params) = ctx.cfg.diagnostics.interpolation.clone() {
        let seeds: Vec<u64> = (0..params.fields).map(|i| ctx.cfg.seed + i).collect();
        let rows = parallel_map(&seeds, thread_cap(), |&seed| -> Result<Vec<Vec<f64>>, RunError> {
            let f = random_localized(seed, params.eps, &grid)?;
            params
                .times
                .iter()
                .map(|&t| Ok(vec![seed as f64, t, interpolation_constant(&linear_propagate(&f, t), t)?]))
                .collect()
        });
        let mut table = Table::new(&["seed", "t", "constant"]);
        for r in rows {
            for row in r? {
                table.push(row);
            }
        }
        let worst = table.rows.iter().map(|r| r[2]).fold(0.0, f64::max);
        ctx.sink.table("interpolation", &table)?;
        ctx.check(
            "interpolation_constant",
            "largest pointwise interpolation constant over fields and times",
            worst,
            Bound::AtMost(params.max_constant),
            format!("{} fields × {} times", params.fields, params.times.len()),
        );
    }
    Ok(())
}

pub(crate) fn envelope(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let delta = ctx.cfg.diagnostics.envelope.as_ref().expect("checked by requirements").delta;
    let grid = ctx.grid()?;
    let f0 = ctx.initial(&grid)?;
    let rep = minimal_envelope(&f0, delta)?;
    let mut table = Table::new(&["k", "dyadic_norm", "ratio", "envelope"]);
    for (i, r) in rep.ratios().iter().enumerate() {
        table.push(vec![rep.ks[i] as f64, rep.norms[i], *r, rep.c[i]]);
    }
    ctx.sink.table("envelope", &table)?;
    ctx.check_holds(
        "admissible",
        "envelope dominates the dyadic ratios, varies slowly and has c_0 >= 1",
        rep.admissible,
        format!("delta = {delta}, sum c_k^2 = {}", rep.sum_sq),
    );
    Ok(())
}

/// `e^{−x²}cos(1.5·2^k x)` filtered to the dyadic band `k`.
pub(crate) fn band_packet(grid: &Arc<Grid>, k: i64) -> Result<RealField, RunError> {
    let w = 1.5 * 2f64.powi(k as i32);
    let raw = RealField::from_fn(grid, |x| (-(x * x)).exp() * (w * x).cos())?;
    Ok(project_real(&raw, Projector::Band(k))?)
}

/// Linear flows of the band-`j` and band-`k` packets, sampled over the time
/// in which the faster packet gains `travel` length units on the slower one
/// (group velocity `2|ξ|` at `|ξ| ≈ 1.5·2^k`).
fn band_pair(grid: &Arc<Grid>, p: &BilinearParams, j: i64, k: i64) -> Result<(Trajectory, Trajectory), RunError> {
    let dv = 3.0 * (2f64.powi(k as i32) - 2f64.powi(j as i32)).abs();
    let t_end = p.travel / dv;
    let times: Vec<f64> = (0..=p.snapshots).map(|i| t_end * i as f64 / p.snapshots as f64).collect();
    let a = band_packet(grid, j)?;
    let b = band_packet(grid, k)?;
    Ok((
        exact_trajectory(grid, "exact-linear", &times, |t| Ok(linear_propagate(&a, t)))?,
        exact_trajectory(grid, "exact-linear", &times, |t| Ok(linear_propagate(&b, t)))?,
    ))
}

pub(crate) fn bilinear(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let p = ctx.cfg.diagnostics.bilinear.clone().expect("checked by requirements");
    let grid = ctx.grid()?;
    let shifts = default_shifts(&grid, p.shifts);
    let [lo, hi] = p.bands;
    let pairs: Vec<(i64, i64)> = (lo..=hi).flat_map(|j| (j + 1..=hi).map(move |k| (j, k))).collect();
    let results = parallel_map(&pairs, thread_cap(), |&(j, k)| -> Result<_, RunError> {
        let (a, b) = band_pair(&grid, &p, j, k)?;
        Ok(bilinear_functional(&a, &b, BandPair::Distinct { j, k }, &shifts)?)
    });
    let mut table = Table::new(&["j", "k", "value", "reference", "ratio", "best_shift"]);
    let mut values = std::collections::BTreeMap::new();
    for (&(j, k), r) in pairs.iter().zip(results) {
        let r = r?;
        table.push(vec![j as f64, k as f64, r.value, r.reference, r.ratio, r.best_shift]);
        values.insert((j, k), r.value);
    }
    ctx.sink.table("bilinear", &table)?;
    let ratios: Vec<f64> = table.rows.iter().map(|r| r[4]).collect();
    let (rmin, rmax) = ratios.iter().fold((f64::INFINITY, 0.0_f64), |(a, b), r| (a.min(*r), b.max(*r)));
    // Distance from the band [1/max, max] in log scale: 1 at either end.
    let spread = if rmin > 0.0 { (rmax.ln().abs().max(rmin.ln().abs())).exp() } else { f64::INFINITY };
    ctx.check(
        "ratio_range",
        "largest factor between the functional and the 2^(-max(j,k)/2) reference",
        spread,
        Bound::AtMost(p.max_ratio),
        format!("ratios in [{rmin:.4}, {rmax:.4}] over {} pairs", pairs.len()),
    );
    let mut steps = Table::new(&["j", "k", "step"]);
    for (&(j, k), v) in &values {
        if let Some(next) = values.get(&(j, k + 1)) {
            steps.push(vec![j as f64, k as f64, next / v]);
        }
    }
    ctx.sink.table("bilinear_steps", &steps)?;
    let expected = 2f64.powf(-0.5);
    let worst = steps
        .rows
        .iter()
        .map(|r| r[2] / expected - 1.0)
        .fold(0.0_f64, |m, d| if d.abs() > m.abs() { d } else { m });
    let (smin, smax) = steps.rows.iter().fold((f64::INFINITY, 0.0_f64), |(a, b), r| (a.min(r[2]), b.max(r[2])));
    ctx.check(
        "high_band_step",
        "largest relative deviation of value(j, k+1)/value(j, k) from 2^(-1/2)",
        worst,
        Bound::Within {
            target: 0.0,
            tol: p.step_tol,
        },
        format!("steps in [{smin:.4}, {smax:.4}]"),
    );
    Ok(())
}
