//! The declarative scenario configuration.
//!
//! A scenario is one JSON object. Unknown keys are rejected everywhere,
//! every numeric parameter is range-checked before any computation, and all
//! problems found by validation are reported together, each with the dotted
//! path of the offending field. Omitted sections take the documented
//! defaults; [`canonical_json`] writes the fully expanded form, so
//! `canonical_json(parse_config(text))` is a fixed point.

use std::fmt;

use bo_evolution::Scheme;
use serde::{Deserialize, Serialize};

/// One problem found in a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIssue {
    /// Dotted path of the field (`"."` for the document itself).
    pub path: String,
    /// What is wrong.
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Every issue found in a configuration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}", .issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ConfigError {
    /// The issues, in document order.
    pub issues: Vec<ConfigIssue>,
}

impl ConfigError {
    fn single(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            issues: vec![ConfigIssue {
                path: path.into(),
                message: message.into(),
            }],
        }
    }
}

/// The full scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// The periodic box.
    pub grid: GridConfig,
    /// Initial data; required by every subcommand that evolves or analyzes a
    /// given field.
    #[serde(default)]
    pub initial_data: Option<InitialData>,
    /// Time stepping.
    #[serde(default)]
    pub integrator: IntegratorConfig,
    /// Enabled reports and their parameters.
    #[serde(default)]
    pub diagnostics: DiagnosticsConfig,
    /// Output directory and formats.
    #[serde(default)]
    pub output: OutputConfig,
    /// Seed of the ChaCha8 generator used for random data.
    #[serde(default)]
    pub seed: u64,
}

/// Grid size, box length and the localization tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Number of grid points (even, ≥ 8).
    pub n_points: usize,
    /// Box length `L > 0`.
    pub length: f64,
    /// Boundary-ratio tolerance of the localization guards (default 1e-8).
    #[serde(default = "default_boundary_tol")]
    pub boundary_tol: f64,
}

fn default_boundary_tol() -> f64 {
    1e-8
}

/// Initial data, selected by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    /// The periodic soliton with speed parameter `c` and crest at `x0`.
    Soliton {
        /// Speed parameter `c > 0`.
        c: f64,
        /// Crest position.
        #[serde(default)]
        x0: f64,
    },
    /// `A e^{−(x−x₀)²/w²}`.
    Gaussian(Profile),
    /// `A (x−x₀) e^{−(x−x₀)²/w²}` (mean zero).
    OddGaussian(Profile),
    /// `A sgn(x−x₀) e^{−(x−x₀)²/w²}` (a jump at `x₀`).
    SignedGaussian(Profile),
    /// Seeded sum of Gaussian-derivative bumps normalized to size `eps`.
    RandomLocalized {
        /// Data size `‖φ‖ + ‖xφ‖`.
        eps: f64,
    },
    /// Seeded random field concentrated at `|ξ| ≈ 2^k` with peak `amplitude`.
    BandLimited {
        /// Dyadic scale.
        k: u32,
        /// Peak amplitude.
        amplitude: f64,
    },
    /// A real `BOF1` snapshot matching the grid.
    File {
        /// Path of the snapshot.
        path: String,
    },
}

/// Parameters of the Gaussian-type profiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Profile {
    /// Amplitude `A` (ignored when `eps` is given).
    #[serde(default = "one")]
    pub amplitude: f64,
    /// Width `w > 0`.
    #[serde(default = "one")]
    pub width: f64,
    /// Center `x₀`.
    #[serde(default)]
    pub center: f64,
    /// When present, rescale to `‖φ‖ + ‖xφ‖ = eps`.
    #[serde(default)]
    pub eps: Option<f64>,
}

fn one() -> f64 {
    1.0
}

/// Time stepping parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorConfig {
    /// `"if-rk4"` or `"etdrk4"`.
    #[serde(default = "default_integrator")]
    pub name: String,
    /// Time step.
    #[serde(default = "default_dt")]
    pub dt: f64,
    /// Final time.
    #[serde(default = "one")]
    pub t_end: f64,
    /// Steps between recorded snapshots.
    #[serde(default = "default_cadence")]
    pub snapshot_cadence: u64,
    /// Stability factor of `dt ≤ cfl·h/sup|φ₀|`; `null` disables the check.
    #[serde(default = "default_cfl")]
    pub cfl: Option<f64>,
}

fn default_integrator() -> String {
    "if-rk4".into()
}
fn default_dt() -> f64 {
    1e-3
}
fn default_cadence() -> u64 {
    100
}
fn default_cfl() -> Option<f64> {
    Some(bo_evolution::DEFAULT_CFL)
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            name: default_integrator(),
            dt: default_dt(),
            t_end: 1.0,
            snapshot_cadence: default_cadence(),
            cfl: default_cfl(),
        }
    }
}

impl IntegratorConfig {
    /// The integrator scheme (validated names only).
    pub fn scheme(&self) -> Scheme {
        Scheme::from_name(&self.name).unwrap_or(Scheme::IfRk4)
    }

    /// Evolution options.
    pub fn evolve_options(&self) -> bo_evolution::EvolveOptions {
        bo_evolution::EvolveOptions {
            dt: self.dt,
            t_end: self.t_end,
            scheme: self.scheme(),
            snapshot_every: self.snapshot_cadence,
            cfl: self.cfl,
        }
    }
}

/// Output directory and formats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Output directory (created if missing).
    #[serde(default = "default_directory")]
    pub directory: String,
    /// Any of `"csv"`, `"json"`, `"bof1"`.
    #[serde(default = "default_formats")]
    pub formats: Vec<String>,
}

fn default_directory() -> String {
    "bo-lab-out".into()
}
fn default_formats() -> Vec<String> {
    vec!["csv".into(), "json".into()]
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            directory: default_directory(),
            formats: default_formats(),
        }
    }
}

impl OutputConfig {
    /// Whether a format is enabled.
    pub fn has(&self, format: &str) -> bool {
        self.formats.iter().any(|f| f == format)
    }
}

/// Reports and checks; a check runs only when its section is present.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticsConfig {
    /// Minimal frequency envelope (`envelope`).
    #[serde(default)]
    pub envelope: Option<EnvelopeParams>,
    /// Decay profile and exponent fit (`decay`, `linear`).
    #[serde(default)]
    pub decay: Option<DecayParams>,
    /// Pointwise interpolation constant of linear flows (`linear`).
    #[serde(default)]
    pub interpolation: Option<InterpolationParams>,
    /// Bilinear functional across dyadic bands (`bilinear`).
    #[serde(default)]
    pub bilinear: Option<BilinearParams>,
    /// Truncation convergence (`convergence`).
    #[serde(default)]
    pub convergence: Option<ConvergenceParams>,
    /// Normal-form identities and order counting (`normalform`).
    #[serde(default)]
    pub normal_form: Option<NormalFormParams>,
    /// Static identities (`identity`).
    #[serde(default)]
    pub identity: Option<IdentityParams>,
    /// Drift of the conserved quantities (`conservation`).
    #[serde(default)]
    pub conservation: Option<ConservationParams>,
    /// Traveling-wave fidelity (`simulate` with soliton data).
    #[serde(default)]
    pub soliton: Option<SolitonParams>,
}

/// Envelope parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeParams {
    /// Slow-variation exponent `δ > 0`.
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_delta() -> f64 {
    0.1
}

/// Decay parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayParams {
    /// Data size `ε`; defaults to `‖φ₀‖ + ‖xφ₀‖`.
    #[serde(default)]
    pub eps: Option<f64>,
    /// Fit window `[t₀, t₁]`.
    #[serde(default = "default_window")]
    pub window: [f64; 2],
    /// Expected sup-norm exponent.
    #[serde(default = "default_exponent")]
    pub exponent: f64,
    /// Allowed deviation of the fitted exponent.
    #[serde(default = "default_exponent_tol")]
    pub exponent_tol: f64,
    /// Upper bound on the profile ratio; `null` skips that check.
    #[serde(default)]
    pub max_profile_ratio: Option<f64>,
    /// Soliton negative control evaluated on the same snapshot times.
    #[serde(default)]
    pub soliton_control: Option<SolitonControl>,
}

fn default_window() -> [f64; 2] {
    [1.0, 100.0]
}
fn default_exponent() -> f64 {
    -0.5
}
fn default_exponent_tol() -> f64 {
    0.05
}

/// The exact traveling soliton used as negative control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonControl {
    /// Speed parameter.
    pub c: f64,
    /// Initial crest position.
    #[serde(default)]
    pub x0: f64,
    /// Allowed deviation of the sup-ratio growth exponent from 1/2.
    #[serde(default = "default_control_tol")]
    pub tolerance: f64,
}

fn default_control_tol() -> f64 {
    0.1
}

/// Interpolation-bound parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolationParams {
    /// Size of the random fields (the constant is scale invariant).
    #[serde(default = "default_interp_eps")]
    pub eps: f64,
    /// Number of seeded random fields (seeds `seed..seed+fields`).
    #[serde(default = "default_fields_50")]
    pub fields: u64,
    /// Evaluation times.
    #[serde(default = "default_interp_times")]
    pub times: Vec<f64>,
    /// Upper bound on the measured constant.
    #[serde(default = "default_ten")]
    pub max_constant: f64,
}

fn default_interp_eps() -> f64 {
    0.1
}
fn default_fields_50() -> u64 {
    50
}
fn default_interp_times() -> Vec<f64> {
    vec![1.0, 4.0, 16.0]
}
fn default_ten() -> f64 {
    10.0
}

/// Bilinear parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearParams {
    /// Inclusive band range `[lo, hi]`; all pairs `lo ≤ j < k ≤ hi` run.
    #[serde(default = "default_bands")]
    pub bands: [i64; 2],
    /// Number of sampled shifts.
    #[serde(default = "default_shifts")]
    pub shifts: usize,
    /// Snapshot intervals per pair.
    #[serde(default = "default_snapshots")]
    pub snapshots: usize,
    /// Relative travel of the faster packet over the run.
    #[serde(default = "default_travel")]
    pub travel: f64,
    /// Upper bound on value/reference.
    #[serde(default = "default_ten")]
    pub max_ratio: f64,
    /// Allowed relative deviation of the high-band step from `2^{−1/2}`.
    #[serde(default = "default_step_tol")]
    pub step_tol: f64,
}

fn default_bands() -> [i64; 2] {
    [2, 8]
}
fn default_shifts() -> usize {
    33
}
fn default_snapshots() -> usize {
    256
}
fn default_travel() -> f64 {
    20.0
}
fn default_step_tol() -> f64 {
    0.3
}

/// Convergence parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceParams {
    /// Truncation indices.
    #[serde(default = "default_n_list")]
    pub n_list: Vec<i64>,
    /// Expected slope of `log₂` differences.
    #[serde(default = "default_slope")]
    pub slope: f64,
    /// Allowed deviation of the slope.
    #[serde(default = "default_slope_tol")]
    pub slope_tol: f64,
}

fn default_n_list() -> Vec<i64> {
    (4..=9).collect()
}
fn default_slope() -> f64 {
    -1.0
}
fn default_slope_tol() -> f64 {
    0.3
}

/// Normal-form parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormParams {
    /// Peak amplitude of the band-limited data of the identity checks.
    #[serde(default = "default_nf_amplitude")]
    pub amplitude: f64,
    /// Inclusive range of dyadic indices.
    #[serde(default = "default_k_range")]
    pub k_range: [i64; 2],
    /// Bound on the relative residuals of both identities.
    #[serde(default = "default_identity_tol")]
    pub tolerance: f64,
    /// Amplitudes of the order-counting experiment (empty skips it).
    #[serde(default = "default_amplitudes")]
    pub order_amplitudes: Vec<f64>,
    /// Dyadic index of the order-counting experiment.
    #[serde(default = "default_order_k")]
    pub order_k: i64,
    /// Allowed deviation of the order-counting slopes from 2 and 3.
    #[serde(default = "default_order_tol")]
    pub order_tol: f64,
}

fn default_nf_amplitude() -> f64 {
    0.05
}
fn default_k_range() -> [i64; 2] {
    [1, 8]
}
fn default_identity_tol() -> f64 {
    1e-8
}
fn default_amplitudes() -> Vec<f64> {
    vec![0.01, 0.02, 0.04, 0.08]
}
fn default_order_k() -> i64 {
    4
}
fn default_order_tol() -> f64 {
    0.1
}

/// Static identity parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityParams {
    /// With random data, the number of seeded fields; otherwise ignored.
    #[serde(default = "default_fields_20")]
    pub fields: u64,
    /// Times at which `G(φ) = ‖𝓛φ‖²` is evaluated.
    #[serde(default = "default_identity_times")]
    pub times: Vec<f64>,
    /// Bound on the relative residual of `G(φ) = ‖𝓛φ‖²`; `null` skips it.
    #[serde(default = "default_scaling_tol")]
    pub scaling: Option<f64>,
    /// Bound on `‖H(φ² − (Hφ)²) − 2φHφ‖_∞`; `null` skips it.
    #[serde(default = "default_hilbert_tol")]
    pub hilbert: Option<f64>,
    /// Bound on `|∫x(φ⁺)³|/∫|x||φ⁺|³`; off by default because the
    /// cancellation requires mean-zero data.
    #[serde(default)]
    pub moment: Option<f64>,
}

fn default_fields_20() -> u64 {
    20
}
fn default_scaling_tol() -> Option<f64> {
    Some(1e-6)
}
fn default_hilbert_tol() -> Option<f64> {
    Some(1e-10)
}
fn default_identity_times() -> Vec<f64> {
    vec![0.0, 1.0, 5.0]
}

/// Conservation parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConservationParams {
    /// Bound on every relative drift.
    #[serde(default = "default_drift_tol")]
    pub tolerance: f64,
}

fn default_drift_tol() -> f64 {
    1e-6
}

impl Default for ConservationParams {
    fn default() -> Self {
        ConservationParams {
            tolerance: default_drift_tol(),
        }
    }
}

/// Soliton fidelity parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonParams {
    /// Bound on the traveling-wave substitution residual.
    #[serde(default = "default_identity_tol")]
    pub residual_tol: f64,
    /// Bound on the final relative shape error.
    #[serde(default = "default_shape_tol")]
    pub shape_tol: f64,
    /// Bound on the relative speed error.
    #[serde(default = "default_speed_tol")]
    pub speed_tol: f64,
}

fn default_shape_tol() -> f64 {
    1e-4
}
fn default_speed_tol() -> f64 {
    0.01
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: ScenarioConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::single(if path.is_empty() { ".".into() } else { path }, e.into_inner().to_string())
    })?;
    let issues = validate(&cfg);
    if issues.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigError { issues })
    }
}

/// The canonical (fully expanded, pretty-printed) JSON form.
pub fn canonical_json(cfg: &ScenarioConfig) -> String {
    let mut s = serde_json::to_string_pretty(cfg).expect("configuration serializes");
    s.push('\n');
    s
}

struct Issues(Vec<ConfigIssue>);

impl Issues {
    fn push(&mut self, path: &str, message: impl Into<String>) {
        self.0.push(ConfigIssue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn positive(&mut self, path: &str, v: f64) {
        if !(v.is_finite() && v > 0.0) {
            self.push(path, format!("must be finite and positive, got {v}"));
        }
    }

    fn finite(&mut self, path: &str, v: f64) {
        if !v.is_finite() {
            self.push(path, format!("must be finite, got {v}"));
        }
    }

    fn window(&mut self, path: &str, w: [f64; 2]) {
        if !(w[0].is_finite() && w[1].is_finite() && w[0] > 0.0 && w[0] < w[1]) {
            self.push(path, format!("must satisfy 0 < start < end, got [{}, {}]", w[0], w[1]));
        }
    }
}

/// All range and consistency problems of a parsed configuration.
pub fn validate(cfg: &ScenarioConfig) -> Vec<ConfigIssue> {
    let mut is = Issues(Vec::new());
    let g = &cfg.grid;
    if g.n_points < 8 || g.n_points % 2 != 0 {
        is.push("grid.n_points", format!("must be even and at least 8, got {}", g.n_points));
    }
    is.positive("grid.length", g.length);
    is.positive("grid.boundary_tol", g.boundary_tol);

    if let Some(d) = &cfg.initial_data {
        match d {
            InitialData::Soliton { c, x0 } => {
                is.positive("initial_data.c", *c);
                is.finite("initial_data.x0", *x0);
            }
            InitialData::Gaussian(p) | InitialData::OddGaussian(p) | InitialData::SignedGaussian(p) => {
                is.finite("initial_data.amplitude", p.amplitude);
                is.positive("initial_data.width", p.width);
                is.finite("initial_data.center", p.center);
                if let Some(e) = p.eps {
                    is.positive("initial_data.eps", e);
                }
            }
            InitialData::RandomLocalized { eps } => is.positive("initial_data.eps", *eps),
            InitialData::BandLimited { k, amplitude } => {
                if *k > 30 {
                    is.push("initial_data.k", format!("must be at most 30, got {k}"));
                }
                is.positive("initial_data.amplitude", *amplitude);
            }
            InitialData::File { path } => {
                if path.is_empty() {
                    is.push("initial_data.path", "must not be empty");
                }
            }
        }
    }

    let it = &cfg.integrator;
    if Scheme::from_name(&it.name).is_none() {
        is.push("integrator.name", format!("unknown integrator `{}` (expected if-rk4 or etdrk4)", it.name));
    }
    is.positive("integrator.dt", it.dt);
    if !(it.t_end.is_finite() && it.t_end >= 0.0) {
        is.push("integrator.t_end", format!("must be finite and non-negative, got {}", it.t_end));
    }
    if it.snapshot_cadence == 0 {
        is.push("integrator.snapshot_cadence", "must be at least 1");
    } else if it.dt.is_finite() && it.dt > 0.0 && it.t_end > 0.0 && it.snapshot_cadence as f64 * it.dt > it.t_end * (1.0 + 1e-9) {
        is.push(
            "integrator.snapshot_cadence",
            format!(
                "cadence × dt = {} exceeds t_end = {} (no snapshot between the end points)",
                it.snapshot_cadence as f64 * it.dt,
                it.t_end
            ),
        );
    }
    if let Some(c) = it.cfl {
        is.positive("integrator.cfl", c);
    }

    if cfg.output.directory.is_empty() {
        is.push("output.directory", "must not be empty");
    }
    for (i, f) in cfg.output.formats.iter().enumerate() {
        if !matches!(f.as_str(), "csv" | "json" | "bof1") {
            is.push(&format!("output.formats[{i}]"), format!("unknown format `{f}` (expected csv, json or bof1)"));
        }
    }

    let d = &cfg.diagnostics;
    if let Some(e) = &d.envelope {
        is.positive("diagnostics.envelope.delta", e.delta);
    }
    if let Some(p) = &d.decay {
        if let Some(e) = p.eps {
            is.positive("diagnostics.decay.eps", e);
        }
        is.window("diagnostics.decay.window", p.window);
        is.finite("diagnostics.decay.exponent", p.exponent);
        is.positive("diagnostics.decay.exponent_tol", p.exponent_tol);
        if let Some(r) = p.max_profile_ratio {
            is.positive("diagnostics.decay.max_profile_ratio", r);
        }
        if let Some(s) = &p.soliton_control {
            is.positive("diagnostics.decay.soliton_control.c", s.c);
            is.finite("diagnostics.decay.soliton_control.x0", s.x0);
            is.positive("diagnostics.decay.soliton_control.tolerance", s.tolerance);
        }
    }
    if let Some(p) = &d.interpolation {
        is.positive("diagnostics.interpolation.eps", p.eps);
        if p.fields == 0 {
            is.push("diagnostics.interpolation.fields", "must be at least 1");
        }
        if p.times.is_empty() {
            is.push("diagnostics.interpolation.times", "must not be empty");
        }
        for (i, t) in p.times.iter().enumerate() {
            is.positive(&format!("diagnostics.interpolation.times[{i}]"), *t);
        }
        is.positive("diagnostics.interpolation.max_constant", p.max_constant);
    }
    if let Some(p) = &d.bilinear {
        if !(p.bands[0] >= 0 && p.bands[0] < p.bands[1] && p.bands[1] <= 20) {
            is.push(
                "diagnostics.bilinear.bands",
                format!("must satisfy 0 <= lo < hi <= 20, got [{}, {}]", p.bands[0], p.bands[1]),
            );
        }
        if p.shifts == 0 {
            is.push("diagnostics.bilinear.shifts", "must be at least 1");
        }
        if p.snapshots < 2 {
            is.push("diagnostics.bilinear.snapshots", "must be at least 2");
        }
        is.positive("diagnostics.bilinear.travel", p.travel);
        if p.travel.is_finite() && p.travel >= g.length {
            is.push(
                "diagnostics.bilinear.travel",
                format!("must be shorter than the box ({} >= {})", p.travel, g.length),
            );
        }
        is.positive("diagnostics.bilinear.max_ratio", p.max_ratio);
        is.positive("diagnostics.bilinear.step_tol", p.step_tol);
    }
    if let Some(p) = &d.convergence {
        if p.n_list.len() < 2 {
            is.push("diagnostics.convergence.n_list", "needs at least two indices");
        }
        for (i, n) in p.n_list.iter().enumerate() {
            if *n < 1 {
                is.push(&format!("diagnostics.convergence.n_list[{i}]"), format!("must be at least 1, got {n}"));
            }
        }
        if p.n_list.windows(2).any(|w| w[1] <= w[0]) {
            is.push("diagnostics.convergence.n_list", "must be strictly increasing");
        }
        is.finite("diagnostics.convergence.slope", p.slope);
        is.positive("diagnostics.convergence.slope_tol", p.slope_tol);
    }
    if let Some(p) = &d.normal_form {
        if !(p.k_range[0] >= 1 && p.k_range[0] <= p.k_range[1]) {
            is.push(
                "diagnostics.normal_form.k_range",
                format!("must satisfy 1 <= lo <= hi, got [{}, {}]", p.k_range[0], p.k_range[1]),
            );
        }
        is.positive("diagnostics.normal_form.amplitude", p.amplitude);
        is.positive("diagnostics.normal_form.tolerance", p.tolerance);
        if p.order_amplitudes.len() == 1 {
            is.push("diagnostics.normal_form.order_amplitudes", "needs zero or at least two amplitudes");
        }
        for (i, a) in p.order_amplitudes.iter().enumerate() {
            is.positive(&format!("diagnostics.normal_form.order_amplitudes[{i}]"), *a);
        }
        if p.order_k < 1 {
            is.push("diagnostics.normal_form.order_k", format!("must be at least 1, got {}", p.order_k));
        }
        is.positive("diagnostics.normal_form.order_tol", p.order_tol);
    }
    if let Some(p) = &d.identity {
        if p.fields == 0 {
            is.push("diagnostics.identity.fields", "must be at least 1");
        }
        for (i, t) in p.times.iter().enumerate() {
            if !(t.is_finite() && *t >= 0.0) {
                is.push(&format!("diagnostics.identity.times[{i}]"), format!("must be finite and non-negative, got {t}"));
            }
        }
        for (name, v) in [("scaling", p.scaling), ("hilbert", p.hilbert), ("moment", p.moment)] {
            if let Some(v) = v {
                is.positive(&format!("diagnostics.identity.{name}"), v);
            }
        }
    }
    if let Some(p) = &d.conservation {
        is.positive("diagnostics.conservation.tolerance", p.tolerance);
    }
    if let Some(p) = &d.soliton {
        is.positive("diagnostics.soliton.residual_tol", p.residual_tol);
        is.positive("diagnostics.soliton.shape_tol", p.shape_tol);
        is.positive("diagnostics.soliton.speed_tol", p.speed_tol);
    }
    is.0
}
