//! Subcommands that integrate the nonlinear equation.

use bo_conservation::{conservation_report, energy, mass, momentum};
use bo_diagnostics::{convergence_experiment, decay_profile, left_refinement_ratio, DecayReport};
use bo_evolution::{SolitonProfile, Trajectory};
use bo_spectral::ops::{derivative_spectral, hilbert_spectral};
use bo_spectral::RealField;
use serde::Serialize;

use super::{exact_trajectory, Ctx};
use crate::checks::Bound;
use crate::config::InitialData;
use crate::error::RunError;
use crate::output::Table;

/// `‖sQ' + HQ'' − ½∂ₓ(Q²)‖_{L²}`: the residual of the traveling ansatz
/// `φ(t, x) = Q(x + st)`.
pub(crate) fn traveling_residual(q: &RealField, speed: f64) -> Result<f64, RunError> {
    let spec = q.dft();
    let qx = derivative_spectral(&spec, 1).to_real()?;
    let hqxx = hilbert_spectral(&derivative_spectral(&spec, 2)).to_real()?;
    let half_sq_x = derivative_spectral(&q.mul_dealiased(q)?.dft(), 1).to_real()?.scale(0.5);
    Ok(qx.scale(speed).add(&hqxx)?.sub(&half_sq_x)?.l2_norm())
}

fn write_snapshots(ctx: &mut Ctx<'_>, traj: &Trajectory) -> Result<(), RunError> {
    for (i, (t, f)) in traj.snapshots().iter().enumerate() {
        ctx.sink.snapshot(&format!("snap_{i:05}"), f, *t)?;
    }
    Ok(())
}

pub(crate) fn simulate(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let grid = ctx.grid()?;
    let f0 = ctx.initial(&grid)?;
    let traj = ctx.evolve(&f0)?;
    let mut table = Table::new(&["t", "mass", "momentum", "energy", "sup", "mean"]);
    for (t, f) in traj.snapshots() {
        table.push(vec![*t, mass(f), momentum(f)?, energy(f)?, f.peak(), f.mean()]);
    }
    ctx.sink.table("trajectory", &table)?;
    write_snapshots(ctx, &traj)?;

    let (Some(params), Some(InitialData::Soliton { c, x0 })) =
        (ctx.cfg.diagnostics.soliton.clone(), ctx.cfg.initial_data.clone())
    else {
        return Ok(());
    };
    let profile = SolitonProfile::new(c, &grid)?;
    let residual = traveling_residual(&f0, profile.speed)?;
    ctx.check(
        "soliton_residual",
        "L2 residual of the traveling-wave equation for the initial profile",
        residual,
        Bound::Below(params.residual_tol),
        format!("nominal speed {}", profile.speed),
    );
    let (t_end, f_end) = traj.last();
    let exact = profile.at_time(x0, *t_end, &grid)?;
    let shape = f_end.sub(&exact)?.l2_norm() / f0.l2_norm();
    ctx.check(
        "soliton_shape",
        "relative L2 distance to the exactly translated profile at the final time",
        shape,
        Bound::Below(params.shape_tol),
        format!("t = {t_end}"),
    );
    // Phase of the first Fourier mode: a translation by −s·t multiplies it
    // by e^{i·dk·s·t}, so a positive speed means leftward motion.
    let a0 = f0.dft().coeffs()[1];
    let a1 = f_end.dft().coeffs()[1];
    let speed = (a1 / a0).arg() / (grid.dk() * t_end);
    ctx.check(
        "soliton_speed",
        "relative error of the measured speed against the nominal speed",
        (speed / profile.speed - 1.0).abs(),
        Bound::Below(params.speed_tol),
        format!("measured {speed}, nominal {}", profile.speed),
    );
    ctx.check(
        "soliton_direction",
        "leftward speed (positive means the crest moves toward negative x)",
        speed,
        Bound::Positive,
        String::new(),
    );
    Ok(())
}

#[derive(Serialize)]
struct ConservationSummary {
    drifts: [(&'static str, f64); 5],
    identity_residual: f64,
    notes: Vec<String>,
}

pub(crate) fn conservation(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let tol = ctx.cfg.diagnostics.conservation.clone().unwrap_or_default().tolerance;
    let grid = ctx.grid()?;
    let f0 = ctx.initial(&grid)?;
    let traj = ctx.evolve(&f0)?;
    let rep = conservation_report(&traj)?;
    let mut table = Table::new(&["t", "mass", "momentum", "energy", "scaling_norm_sq", "scaling_functional"]);
    for r in &rep.rows {
        table.push(vec![r.time, r.mass, r.momentum, r.energy, r.scaling_norm_sq, r.scaling_functional]);
    }
    ctx.sink.table("conservation", &table)?;
    let d = rep.drifts;
    ctx.sink.json(
        "conservation_summary",
        &ConservationSummary {
            drifts: [
                ("mass", d.mass),
                ("momentum", d.momentum),
                ("energy", d.energy),
                ("scaling_norm_sq", d.scaling_norm_sq),
                ("scaling_functional", d.scaling_functional),
            ],
            identity_residual: rep.identity_residual,
            notes: rep.notes.clone(),
        },
    )?;
    write_snapshots(ctx, &traj)?;
    let span = format!("{} snapshots over [0, {}]", rep.rows.len(), traj.last().0);
    ctx.check(
        "scaling_norm_drift",
        "relative drift of the squared L2 norm of the scaling operator",
        d.scaling_norm_sq,
        Bound::Below(tol),
        span.clone(),
    );
    for (name, what, v) in [
        ("mass_drift", "relative drift of the mass", d.mass),
        ("momentum_drift", "relative drift of the momentum", d.momentum),
        ("energy_drift", "relative drift of the energy", d.energy),
    ] {
        ctx.check(name, what, v, Bound::Below(tol), span.clone());
    }
    if d.scaling_functional.is_finite() {
        ctx.check(
            "scaling_functional_drift",
            "relative drift of the scaling functional G",
            d.scaling_functional,
            Bound::Below(tol),
            span,
        );
    }
    Ok(())
}

pub(crate) fn convergence(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let params = ctx.cfg.diagnostics.convergence.clone().expect("checked by requirements");
    let grid = ctx.grid()?;
    let f0 = ctx.initial(&grid)?;
    let rep = convergence_experiment(&f0, &params.n_list, &ctx.cfg.integrator.evolve_options())?;
    let mut table = Table::new(&["n", "sup_h_minus_half_difference"]);
    for (n, d) in rep.ns.iter().zip(&rep.differences) {
        table.push(vec![*n as f64, *d]);
    }
    ctx.sink.table("convergence", &table)?;
    let detail = format!("reference n = {}, fit residual {:e}", rep.reference_n, rep.fit_residual);
    ctx.check(
        "slope",
        "slope of log2 of the H^(-1/2) sup-difference against n",
        rep.slope,
        Bound::Within {
            target: params.slope,
            tol: params.slope_tol,
        },
        detail,
    );
    ctx.check_holds(
        "monotone",
        "differences nonincreasing in n (10% slack)",
        rep.monotone,
        format!("{:?}", rep.differences),
    );
    Ok(())
}

/// Writes a decay report as a table.
pub(crate) fn decay_table(rep: &DecayReport) -> Table {
    let mut table = Table::new(&[
        "t",
        "sup",
        "hilbert_sup",
        "profile_ratio",
        "elliptic_ratio",
        "intphi_ratio",
        "sup_ratio",
    ]);
    for i in 0..rep.times.len() {
        table.push(vec![
            rep.times[i],
            rep.sup_norms[i],
            rep.hilbert_sup_norms[i],
            rep.profile_ratios[i],
            rep.elliptic_ratios[i].unwrap_or(f64::NAN),
            rep.intphi_ratios[i],
            rep.sup_ratios[i],
        ]);
    }
    table
}

/// Largest left-region refinement ratio over the snapshots with `t ≥ 1`.
pub(crate) fn max_left_refinement(traj: &Trajectory) -> Result<f64, RunError> {
    let mut worst: f64 = 0.0;
    for (t, f) in traj.snapshots() {
        if *t >= 1.0 {
            worst = worst.max(left_refinement_ratio(f, *t)?);
        }
    }
    Ok(worst)
}

pub(crate) fn decay(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let params = ctx.cfg.diagnostics.decay.clone().expect("checked by requirements");
    let grid = ctx.grid()?;
    let f0 = ctx.initial(&grid)?;
    let eps = match params.eps {
        Some(e) => e,
        None => bo_evolution::data_norm(&f0)?,
    };
    let window = (params.window[0], params.window[1]);
    let traj = ctx.evolve(&f0)?;
    let rep = decay_profile(&traj, eps, window)?;
    ctx.sink.table("decay", &decay_table(&rep))?;
    ctx.check(
        "exponent",
        "fitted exponent of sup|phi| in the fit window",
        rep.fitted_exponent,
        Bound::Within {
            target: params.exponent,
            tol: params.exponent_tol,
        },
        format!("window [{}, {}], fit residual {:e}", window.0, window.1, rep.fit_residual),
    );
    if let Some(max) = params.max_profile_ratio {
        let last = rep.last_time_within(max);
        ctx.check(
            "profile_ratio",
            "largest ratio of |phi| + |H phi| to the pointwise decay envelope",
            rep.max_profile_ratio(),
            Bound::AtMost(max),
            format!("eps = {eps}; ratio stays <= {max} up to t = {}", last.map_or("none".into(), |t| t.to_string())),
        );
    }
    let left = max_left_refinement(&traj)?;
    ctx.check(
        "left_refinement",
        "largest refined left-region bound relative to its value at x = 0",
        left,
        Bound::AtMost(10.0),
        String::new(),
    );
    write_snapshots(ctx, &traj)?;

    if let Some(control) = &params.soliton_control {
        let profile = SolitonProfile::new(control.c, &grid)?;
        let times = traj.times();
        let straj = exact_trajectory(&grid, "exact-soliton", &times, |t| Ok(profile.at_time(control.x0, t, &grid)?))?;
        let srep = decay_profile(&straj, eps, window)?;
        ctx.sink.table("soliton_control", &decay_table(&srep))?;
        let ts: Vec<f64> = srep.times.clone();
        let fit = bo_diagnostics::fit_power_law(&ts, &srep.sup_ratios, window)?;
        let last = srep.last_time_within(params.max_profile_ratio.unwrap_or(5.0));
        ctx.check(
            "soliton_control",
            "growth exponent of the sup ratio for the exact soliton (expected 1/2)",
            fit.slope,
            Bound::Within {
                target: 0.5,
                tol: control.tolerance,
            },
            format!(
                "c = {}; soliton profile ratio max {:.3e}, within bound up to t = {}",
                control.c,
                srep.max_profile_ratio(),
                last.map_or("none".into(), |t| t.to_string())
            ),
        );
    }
    Ok(())
}
