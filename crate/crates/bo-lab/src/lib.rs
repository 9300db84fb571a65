//! Scenario configuration, experiment orchestration, persistence and the
//! command-line surface of the Benjamin–Ono lab.
//!
//! A scenario is a JSON document ([`ScenarioConfig`]) naming a grid, initial
//! data, an integrator, the enabled diagnostics and the outputs. Each
//! [`Subcommand`] runs one experiment on it, writes CSV/JSON tables (and
//! optionally `BOF1` snapshots) and a `manifest.json` holding the canonical
//! configuration, versions, wall time and the pass/fail record of every
//! [`Check`]. Given the same configuration and seed, every CSV and JSON file
//! except the wall-time entry of the manifest is byte-for-byte reproducible.
//!
//! Exit codes: [`EXIT_OK`] (all checks pass), [`EXIT_CHECK_FAILED`],
//! [`EXIT_CONFIG`] (invalid configuration) and [`EXIT_RUNTIME`]
//! (divergence, I/O or a numerical precondition).

pub mod checks;
mod commands;
pub mod config;
pub mod data;
pub mod error;
pub mod output;
pub mod parallel;
pub mod runner;

pub use checks::{catalogue_table, Bound, CatalogueEntry, Check, CATALOGUE};
pub use config::{canonical_json, parse_config, validate, ConfigError, ConfigIssue, InitialData, ScenarioConfig};
pub use error::{RunError, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME};
pub use parallel::{parallel_map, thread_cap, THREADS_ENV};
pub use runner::{load_config, run_many, run_scenario, versions, Manifest, RunOutcome, Status, Subcommand};
