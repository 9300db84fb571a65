//! Running one scenario end to end: validation, the subcommand, outputs
//! and the manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::checks::Check;
use crate::commands::{dispatch, requirements, Ctx};
use crate::config::{canonical_json, parse_config, ConfigError, ScenarioConfig};
use crate::error::{RunError, EXIT_CHECK_FAILED, EXIT_OK};
use crate::output::Sink;
use crate::parallel::{parallel_map, thread_cap};

/// The subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcommand {
    /// Evolve and record the trajectory (soliton fidelity checks).
    Simulate,
    /// Exact linear flows: dispersive decay and the interpolation bound.
    Linear,
    /// Drift of the conserved quantities.
    Conservation,
    /// Exact normal-form identities and order counting.
    NormalForm,
    /// Nonlinear decay tracking with a soliton control.
    Decay,
    /// Minimal frequency envelope of the initial data.
    Envelope,
    /// Bilinear functional across dyadic bands.
    Bilinear,
    /// Truncation convergence.
    Convergence,
    /// Static identities.
    Identity,
}

impl Subcommand {
    /// All subcommands.
    pub const ALL: [Subcommand; 9] = [
        Subcommand::Simulate,
        Subcommand::Linear,
        Subcommand::Conservation,
        Subcommand::NormalForm,
        Subcommand::Decay,
        Subcommand::Envelope,
        Subcommand::Bilinear,
        Subcommand::Convergence,
        Subcommand::Identity,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Simulate => "simulate",
            Subcommand::Linear => "linear",
            Subcommand::Conservation => "conservation",
            Subcommand::NormalForm => "normalform",
            Subcommand::Decay => "decay",
            Subcommand::Envelope => "envelope",
            Subcommand::Bilinear => "bilinear",
            Subcommand::Convergence => "convergence",
            Subcommand::Identity => "identity",
        }
    }

    /// Inverse of [`Subcommand::name`].
    pub fn from_name(s: &str) -> Option<Self> {
        Subcommand::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Overall result of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Completed, every check passed.
    Passed,
    /// Completed, at least one check failed.
    ChecksFailed,
    /// Aborted by an error.
    Error,
}

/// The record written to `manifest.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    /// Subcommand name.
    pub subcommand: String,
    /// Overall status.
    pub status: Status,
    /// Process exit code.
    pub exit_code: i32,
    /// Error message, when the run aborted.
    pub error: Option<String>,
    /// Last time at which an aborted evolution was finite.
    pub last_good_time: Option<f64>,
    /// Elapsed wall-clock seconds (the only nondeterministic entry).
    pub wall_time_seconds: f64,
    /// Versions of the tool and of every library crate.
    pub versions: BTreeMap<&'static str, &'static str>,
    /// Binary snapshot format written with `"bof1"` output.
    pub snapshot_format: &'static str,
    /// Floating-point environment the outputs are reproducible under.
    pub float_environment: &'static str,
    /// The canonical configuration that ran (seed override applied).
    pub config: ScenarioConfig,
    /// Files written, relative to the output directory.
    pub files: Vec<String>,
    /// Every check, in the order evaluated.
    pub checks: Vec<Check>,
}

/// Versions of this crate and the libraries it drives.
pub fn versions() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("bo-lab", env!("CARGO_PKG_VERSION")),
        ("bo-spectral", bo_spectral::VERSION),
        ("bo-evolution", bo_evolution::VERSION),
        ("bo-conservation", bo_conservation::VERSION),
        ("bo-normal-form", bo_normal_form::VERSION),
        ("bo-diagnostics", bo_diagnostics::VERSION),
    ])
}

const FLOAT_ENVIRONMENT: &str =
    "IEEE-754 binary64, round-to-nearest; deterministic FFT plans; single-threaded scenario pipeline";

/// Result of [`run_scenario`].
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Output directory.
    pub out_dir: PathBuf,
    /// The manifest (also written to disk when the directory was usable).
    pub manifest: Manifest,
}

impl RunOutcome {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        self.manifest.exit_code
    }

    /// The checks recorded.
    pub fn checks(&self) -> &[Check] {
        &self.manifest.checks
    }
}

/// Runs one subcommand on a validated configuration, writing into
/// `cfg.output.directory`.
///
/// Checks that fail are recorded and the run continues; an error aborts the
/// subcommand but the manifest is still written.
pub fn run_scenario(sub: Subcommand, cfg: &ScenarioConfig) -> RunOutcome {
    let start = Instant::now();
    let out_dir = PathBuf::from(&cfg.output.directory);
    let mut manifest = Manifest {
        subcommand: sub.name().into(),
        status: Status::Error,
        exit_code: crate::error::EXIT_RUNTIME,
        error: None,
        last_good_time: None,
        wall_time_seconds: 0.0,
        versions: versions(),
        snapshot_format: "BOF1",
        float_environment: FLOAT_ENVIRONMENT,
        config: cfg.clone(),
        files: Vec::new(),
        checks: Vec::new(),
    };
    let fail = |m: &mut Manifest, e: RunError| {
        m.exit_code = e.exit_code();
        m.last_good_time = e.last_good_time();
        m.error = Some(e.to_string());
        m.status = Status::Error;
    };
    if let Err(e) = requirements(sub, cfg) {
        fail(&mut manifest, e.into());
        return RunOutcome { out_dir, manifest };
    }
    let sink = match Sink::new(&out_dir, &cfg.output) {
        Ok(s) => s,
        Err(e) => {
            fail(&mut manifest, e);
            return RunOutcome { out_dir, manifest };
        }
    };
    let mut ctx = Ctx::new(cfg, sink, sub);
    let result = ctx
        .sink
        .write_text("config.json", &canonical_json(cfg))
        .and_then(|_| dispatch(sub, &mut ctx));
    manifest.checks = std::mem::take(&mut ctx.checks);
    match result {
        Ok(()) => {
            let ok = manifest.checks.iter().all(|c| c.passed);
            manifest.status = if ok { Status::Passed } else { Status::ChecksFailed };
            manifest.exit_code = if ok { EXIT_OK } else { EXIT_CHECK_FAILED };
        }
        Err(e) => fail(&mut manifest, e),
    }
    manifest.files = ctx.sink.files().to_vec();
    manifest.files.push("manifest.json".into());
    manifest.wall_time_seconds = start.elapsed().as_secs_f64();
    if let Err(e) = ctx.sink.write_json("manifest.json", &manifest) {
        fail(&mut manifest, e);
    }
    RunOutcome { out_dir, manifest }
}

/// Reads and validates a configuration file, applying the command-line
/// overrides of the output directory and the seed.
pub fn load_config(path: &Path, out: Option<&Path>, seed: Option<u64>) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
        issues: vec![crate::config::ConfigIssue {
            path: ".".into(),
            message: format!("cannot read {}: {e}", path.display()),
        }],
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(out) = out {
        cfg.output.directory = out.display().to_string();
    }
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

/// Runs independent scenarios with at most `BO_LAB_THREADS` workers; the
/// outcomes keep the input order.
pub fn run_many(jobs: &[(Subcommand, ScenarioConfig)]) -> Vec<RunOutcome> {
    parallel_map(jobs, thread_cap(), |(sub, cfg)| run_scenario(*sub, cfg))
}
