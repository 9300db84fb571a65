//! Static identities and the normal-form checks.

use bo_conservation::{moment_cancellation, scaling_functional, scaling_operator};
use bo_diagnostics::fit_line;
use bo_evolution::random_band_limited;
use bo_normal_form::{identity_defects, identity_report};
use bo_spectral::{hilbert, MeanMode, RealField};

use super::Ctx;
use crate::checks::Bound;
use crate::config::InitialData;
use crate::data::build_initial;
use crate::error::RunError;
use crate::output::Table;
use crate::parallel::{parallel_map, thread_cap};

/// `‖H(φ² − (Hφ)²) − 2φHφ‖_∞` with de-aliased products.
pub(crate) fn hilbert_identity_residual(phi: &RealField) -> Result<f64, RunError> {
    let h = hilbert(phi);
    let lhs = hilbert(&phi.mul_dealiased(phi)?.sub(&h.mul_dealiased(&h)?)?);
    let rhs = phi.mul_dealiased(&h)?.scale(2.0);
    Ok(lhs.max_abs_diff(&rhs)?)
}

pub(crate) fn normal_form(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let p = ctx.cfg.diagnostics.normal_form.clone().expect("checked by requirements");
    let grid = ctx.grid()?;
    let seed = ctx.cfg.seed;
    let ks: Vec<i64> = (p.k_range[0]..=p.k_range[1]).collect();
    let reports = parallel_map(&ks, thread_cap(), |&k| -> Result<_, RunError> {
        let phi = random_band_limited(seed, k as u32, p.amplitude, &grid)?;
        Ok(identity_report(&phi, k, MeanMode::Strict)?)
    });
    let mut table = Table::new(&["k", "residual_identity", "residual_gauged", "bk_norm", "q3_norm"]);
    for r in reports {
        let r = r?;
        table.push(vec![r.k as f64, r.residual_identity, r.residual_gauged, r.bk_norm, r.q3_norm]);
    }
    ctx.sink.table("normal_form", &table)?;
    let max_of = |col: usize| table.rows.iter().map(|r| r[col]).fold(0.0, f64::max);
    let detail = format!("k in [{}, {}], amplitude {}", p.k_range[0], p.k_range[1], p.amplitude);
    ctx.check(
        "identity_residual",
        "largest relative residual of the corrected-variable identity",
        max_of(1),
        Bound::Below(p.tolerance),
        detail.clone(),
    );
    ctx.check(
        "gauged_residual",
        "largest relative residual of the gauged-variable identity",
        max_of(2),
        Bound::Below(p.tolerance),
        detail,
    );

    if p.order_amplitudes.is_empty() {
        return Ok(());
    }
    let mut order = Table::new(&["amplitude", "without_bk", "without_q3", "full"]);
    for &a in &p.order_amplitudes {
        let phi = random_band_limited(seed, p.order_k as u32, a, &grid)?;
        let d = identity_defects(&phi, p.order_k, MeanMode::Strict)?;
        order.push(vec![a, d.without_bk, d.without_q3, d.full]);
    }
    ctx.sink.table("order_counting", &order)?;
    let la: Vec<f64> = order.rows.iter().map(|r| r[0].ln()).collect();
    let log_col = |c: usize| order.rows.iter().map(|r| r[c].ln()).collect::<Vec<_>>();
    for (name, what, col, target) in [
        ("order_without_bk", "amplitude slope of the defect without B_k", 1, 2.0),
        ("order_without_q3", "amplitude slope of the defect without Q3", 2, 3.0),
    ] {
        let fit = fit_line(&la, &log_col(col))?;
        ctx.check(
            name,
            what,
            fit.slope,
            Bound::Within {
                target,
                tol: p.order_tol,
            },
            format!("k = {}, log-log residual {:e}", p.order_k, fit.residual),
        );
    }
    Ok(())
}

pub(crate) fn identity(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let p = ctx.cfg.diagnostics.identity.clone().expect("checked by requirements");
    let grid = ctx.grid()?;
    let data = ctx.cfg.initial_data.clone().expect("checked by requirements");
    let seeds: Vec<u64> = match data {
        InitialData::RandomLocalized { .. } | InitialData::BandLimited { .. } => {
            (0..p.fields).map(|i| ctx.cfg.seed + i).collect()
        }
        _ => vec![ctx.cfg.seed],
    };
    let fields = seeds
        .iter()
        .map(|&s| build_initial(&data, &grid, s))
        .collect::<Result<Vec<_>, _>>()?;
    let n_fields = fields.len();

    if let Some(tol) = p.scaling {
        let mut table = Table::new(&["seed", "t", "scaling_functional", "scaling_norm_sq", "relative_residual"]);
        for (seed, f) in seeds.iter().zip(&fields) {
            for &t in &p.times {
                let g = scaling_functional(f, t)?;
                let l2 = scaling_operator(f, t)?.l2_norm().powi(2);
                table.push(vec![*seed as f64, t, g, l2, ((g - l2) / g).abs()]);
            }
        }
        let worst = table.rows.iter().map(|r| r[4]).fold(0.0, f64::max);
        ctx.sink.table("scaling_identity", &table)?;
        ctx.check(
            "scaling_identity",
            "largest relative residual |G - ||L phi||^2| / G",
            worst,
            Bound::Below(tol),
            format!("{n_fields} fields × {} times", p.times.len()),
        );
    }
    if let Some(tol) = p.hilbert {
        let mut table = Table::new(&["seed", "sup_residual"]);
        for (seed, f) in seeds.iter().zip(&fields) {
            table.push(vec![*seed as f64, hilbert_identity_residual(f)?]);
        }
        let worst = table.rows.iter().map(|r| r[1]).fold(0.0, f64::max);
        ctx.sink.table("hilbert_identity", &table)?;
        ctx.check(
            "hilbert_identity",
            "largest sup-norm residual of H(phi^2 - (H phi)^2) = 2 phi H phi",
            worst,
            Bound::Below(tol),
            format!("{n_fields} fields"),
        );
    }
    if let Some(tol) = p.moment {
        let mut table = Table::new(&["seed", "moment_abs", "scale", "relative"]);
        for (seed, f) in seeds.iter().zip(&fields) {
            let m = moment_cancellation(f)?;
            table.push(vec![*seed as f64, m.moment.norm(), m.scale, m.relative()]);
        }
        let worst = table.rows.iter().map(|r| r[3]).fold(0.0, f64::max);
        ctx.sink.table("moment_cancellation", &table)?;
        ctx.check(
            "moment_cancellation",
            "largest |int x (phi+)^3| relative to int |x| |phi+|^3",
            worst,
            Bound::Below(tol),
            format!("{n_fields} fields"),
        );
    }
    Ok(())
}
