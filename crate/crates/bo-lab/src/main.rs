//! `bo-lab <subcommand> --config <path> [--out <dir>] [--seed <n>]`

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bo_lab::{catalogue_table, load_config, run_many, Status, Subcommand, EXIT_CONFIG};
use clap::{Args, Parser};

/// Benjamin–Ono pseudo-spectral lab.
#[derive(Parser)]
#[command(name = "bo-lab", version, about)]
struct Cli {
    /// Print every acceptance check with its tolerance and invocation.
    #[arg(long, global = true)]
    list_checks: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Evolve the initial data and record the trajectory.
    Simulate(RunArgs),
    /// Exact linear flows: dispersive decay and the interpolation bound.
    Linear(RunArgs),
    /// Drift of the conserved quantities along the flow.
    Conservation(RunArgs),
    /// Exact normal-form identities and order counting.
    Normalform(RunArgs),
    /// Small-data decay tracking with a soliton control.
    Decay(RunArgs),
    /// Minimal frequency envelope of the initial data.
    Envelope(RunArgs),
    /// Bilinear functional across dyadic bands.
    Bilinear(RunArgs),
    /// Convergence of band-truncated data.
    Convergence(RunArgs),
    /// Static identities (scaling, Hilbert, moment).
    Identity(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario configuration (JSON). Repeat to run several scenarios; they
    /// run in parallel up to BO_LAB_THREADS workers.
    #[arg(long, required = true)]
    config: Vec<PathBuf>,
    /// Output directory (overrides `output.directory`). With several
    /// configurations each writes to `<out>/<config file stem>`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
}

impl Command {
    fn split(self) -> (Subcommand, RunArgs) {
        match self {
            Command::Simulate(a) => (Subcommand::Simulate, a),
            Command::Linear(a) => (Subcommand::Linear, a),
            Command::Conservation(a) => (Subcommand::Conservation, a),
            Command::Normalform(a) => (Subcommand::NormalForm, a),
            Command::Decay(a) => (Subcommand::Decay, a),
            Command::Envelope(a) => (Subcommand::Envelope, a),
            Command::Bilinear(a) => (Subcommand::Bilinear, a),
            Command::Convergence(a) => (Subcommand::Convergence, a),
            Command::Identity(a) => (Subcommand::Identity, a),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    if cli.list_checks {
        // A closed stdout (e.g. piped into `head`) is not an error.
        let _ = write!(std::io::stdout(), "{}", catalogue_table());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("bo-lab: a subcommand is required (see --help)");
        return ExitCode::from(EXIT_CONFIG as u8);
    };
    let (sub, args) = command.split();
    let several = args.config.len() > 1;
    let mut jobs = Vec::new();
    for path in &args.config {
        let out = args.out.as_ref().map(|o| {
            if several {
                o.join(path.file_stem().unwrap_or_default())
            } else {
                o.clone()
            }
        });
        match load_config(path, out.as_deref(), args.seed) {
            Ok(cfg) => jobs.push((sub, cfg)),
            Err(e) => {
                eprintln!("bo-lab: {}:", path.display());
                for issue in &e.issues {
                    eprintln!("  {issue}");
                }
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        }
    }
    let mut code = 0;
    let mut stdout = std::io::stdout().lock();
    for outcome in run_many(&jobs) {
        let m = &outcome.manifest;
        for c in &m.checks {
            let _ = writeln!(
                stdout,
                "{} {} = {:e} ({}) {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.value,
                c.tolerance,
                c.detail
            );
        }
        if let Some(err) = &m.error {
            eprintln!("bo-lab {}: error: {err}", sub.name());
            if let Some(t) = m.last_good_time {
                eprintln!("  last good time: {t}");
            }
        }
        let status = match m.status {
            Status::Passed => "passed",
            Status::ChecksFailed => "checks failed",
            Status::Error => "error",
        };
        let _ = writeln!(stdout, "{}: {status}; manifest in {}", sub.name(), outcome.out_dir.display());
        code = code.max(outcome.exit_code());
    }
    ExitCode::from(code as u8)
}
