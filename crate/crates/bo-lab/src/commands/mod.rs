//! The subcommands. Each one reads its sections of the configuration,
//! writes its reports through the [`Sink`] and records [`Check`]s; a failed
//! check never stops the run, an error does.

use std::sync::Arc;

use bo_evolution::{evolve, Trajectory, TrajectoryMeta};
use bo_spectral::{Grid, RealField};

use crate::checks::{Bound, Check, CATALOGUE};
use crate::config::{ConfigError, ConfigIssue, ScenarioConfig};
use crate::data::{build_grid, build_initial};
use crate::error::RunError;
use crate::output::Sink;
use crate::Subcommand;

mod analysis;
mod dynamics;
mod identities;

/// Mutable state of one run.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a ScenarioConfig,
    pub sink: Sink,
    pub checks: Vec<Check>,
    sub: Subcommand,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a ScenarioConfig, sink: Sink, sub: Subcommand) -> Self {
        Ctx {
            cfg,
            sink,
            checks: Vec::new(),
            sub,
        }
    }

    pub fn grid(&self) -> Result<Arc<Grid>, RunError> {
        build_grid(&self.cfg.grid)
    }

    /// The configured initial data (presence is checked by [`requirements`]).
    pub fn initial(&self, grid: &Arc<Grid>) -> Result<RealField, RunError> {
        let data = self.cfg.initial_data.as_ref().expect("initial data is required by this subcommand");
        build_initial(data, grid, self.cfg.seed)
    }

    /// Evolves with the configured integrator.
    pub fn evolve(&self, f: &RealField) -> Result<Trajectory, RunError> {
        Ok(evolve(f, &self.cfg.integrator.evolve_options(), None)?)
    }

    /// Records a check `<subcommand>.<name>`; the criterion comes from the
    /// catalogue.
    pub fn check(&mut self, name: &str, description: &str, value: f64, bound: Bound, detail: String) {
        let id = format!("{}.{name}", self.sub.name());
        let criterion = criterion_of(&id);
        self.checks.push(Check::new(&id, criterion, description, value, bound, detail));
    }

    /// Records a boolean check.
    pub fn check_holds(&mut self, name: &str, description: &str, holds: bool, detail: String) {
        let id = format!("{}.{name}", self.sub.name());
        let criterion = criterion_of(&id);
        self.checks.push(Check::holds(&id, criterion, description, holds, detail));
    }
}

fn criterion_of(id: &str) -> Option<u8> {
    CATALOGUE.iter().find(|e| e.id == id).map(|e| e.criterion)
}

/// Snapshot times `0, s, 2s, …` with `s = cadence·dt`, ending at `t_end`.
pub(crate) fn sample_times(cfg: &ScenarioConfig) -> Vec<f64> {
    let it = &cfg.integrator;
    let step = it.snapshot_cadence as f64 * it.dt;
    let mut times = vec![0.0];
    let mut i = 1u64;
    loop {
        let t = i as f64 * step;
        if t >= it.t_end * (1.0 - 1e-12) {
            break;
        }
        times.push(t);
        i += 1;
    }
    if it.t_end > 0.0 {
        times.push(it.t_end);
    }
    times
}

/// Builds a trajectory from exactly evaluated snapshots.
pub(crate) fn exact_trajectory(
    grid: &Arc<Grid>,
    label: &str,
    times: &[f64],
    mut at: impl FnMut(f64) -> Result<RealField, RunError>,
) -> Result<Trajectory, RunError> {
    let snaps = times.iter().map(|&t| Ok((t, at(t)?))).collect::<Result<Vec<_>, RunError>>()?;
    let dt = if times.len() > 1 { times[1] - times[0] } else { 0.0 };
    let meta = TrajectoryMeta {
        integrator: label.into(),
        dt,
        dealiased: false,
        n_points: grid.n(),
        length: grid.length(),
    };
    Ok(Trajectory::new(snaps, meta)?)
}

/// Sections and data the subcommand needs, checked before any computation.
pub(crate) fn requirements(sub: Subcommand, cfg: &ScenarioConfig) -> Result<(), ConfigError> {
    let d = &cfg.diagnostics;
    let mut issues = Vec::new();
    let mut need = |present: bool, path: &str, what: &str| {
        if !present {
            issues.push(ConfigIssue {
                path: path.into(),
                message: format!("required by `{}`: {what}", sub.name()),
            });
        }
    };
    let data = cfg.initial_data.is_some();
    match sub {
        Subcommand::Simulate | Subcommand::Conservation => need(data, "initial_data", "initial data"),
        Subcommand::Linear => {
            need(
                d.decay.is_some() || d.interpolation.is_some(),
                "diagnostics",
                "a `decay` or `interpolation` section",
            );
            if d.decay.is_some() {
                need(data, "initial_data", "initial data for the decay report");
            }
        }
        Subcommand::NormalForm => need(d.normal_form.is_some(), "diagnostics.normal_form", "a `normal_form` section"),
        Subcommand::Decay => {
            need(data, "initial_data", "initial data");
            need(d.decay.is_some(), "diagnostics.decay", "a `decay` section");
        }
        Subcommand::Envelope => {
            need(data, "initial_data", "initial data");
            need(d.envelope.is_some(), "diagnostics.envelope", "an `envelope` section");
        }
        Subcommand::Bilinear => need(d.bilinear.is_some(), "diagnostics.bilinear", "a `bilinear` section"),
        Subcommand::Convergence => {
            need(data, "initial_data", "initial data");
            need(d.convergence.is_some(), "diagnostics.convergence", "a `convergence` section");
        }
        Subcommand::Identity => {
            need(data, "initial_data", "initial data");
            need(d.identity.is_some(), "diagnostics.identity", "an `identity` section");
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(ConfigError { issues })
    }
}

/// Runs the subcommand body.
pub(crate) fn dispatch(sub: Subcommand, ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    match sub {
        Subcommand::Simulate => dynamics::simulate(ctx),
        Subcommand::Conservation => dynamics::conservation(ctx),
        Subcommand::Convergence => dynamics::convergence(ctx),
        Subcommand::Decay => dynamics::decay(ctx),
        Subcommand::Linear => analysis::linear(ctx),
        Subcommand::Envelope => analysis::envelope(ctx),
        Subcommand::Bilinear => analysis::bilinear(ctx),
        Subcommand::NormalForm => identities::normal_form(ctx),
        Subcommand::Identity => identities::identity(ctx),
    }
}
