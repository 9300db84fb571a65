//! Pass/fail checks and the catalogue of acceptance checks.

use serde::Serialize;

/// The acceptance rule of one check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// `value < limit`.
    Below(f64),
    /// `value ≤ limit`.
    AtMost(f64),
    /// `|value − target| ≤ tol`.
    Within {
        /// Expected value.
        target: f64,
        /// Allowed absolute deviation.
        tol: f64,
    },
    /// `lo ≤ value ≤ hi`.
    Between {
        /// Lower end.
        lo: f64,
        /// Upper end.
        hi: f64,
    },
    /// `value > 0` (used for signs and directions).
    Positive,
    /// A boolean property, recorded as 1 (holds) or 0.
    Holds,
}

impl Bound {
    /// Whether `value` satisfies the rule (NaN never does).
    pub fn accepts(&self, value: f64) -> bool {
        match *self {
            Bound::Below(l) => value < l,
            Bound::AtMost(l) => value <= l,
            Bound::Within { target, tol } => (value - target).abs() <= tol,
            Bound::Between { lo, hi } => lo <= value && value <= hi,
            Bound::Positive => value > 0.0,
            Bound::Holds => value == 1.0,
        }
    }

    /// Human-readable form of the rule.
    pub fn describe(&self) -> String {
        match *self {
            Bound::Below(l) => format!("< {l:e}"),
            Bound::AtMost(l) => format!("<= {l}"),
            Bound::Within { target, tol } => format!("{target} ± {tol}"),
            Bound::Between { lo, hi } => format!("in [{lo}, {hi}]"),
            Bound::Positive => "> 0".into(),
            Bound::Holds => "holds".into(),
        }
    }
}

/// The outcome of one check, as recorded in the manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    /// Stable identifier, `<subcommand>.<name>`.
    pub id: String,
    /// Acceptance criterion this check certifies, if any.
    pub criterion: Option<u8>,
    /// What is measured.
    pub description: String,
    /// Measured value (NaN serializes as `null`).
    pub value: f64,
    /// The rule, in words.
    pub tolerance: String,
    /// Whether the value satisfies the rule.
    pub passed: bool,
    /// Supporting numbers.
    pub detail: String,
}

impl Check {
    /// Evaluates `value` against `bound`.
    pub fn new(id: &str, criterion: Option<u8>, description: &str, value: f64, bound: Bound, detail: String) -> Self {
        Check {
            id: id.into(),
            criterion,
            description: description.into(),
            value,
            tolerance: bound.describe(),
            passed: bound.accepts(value),
            detail,
        }
    }

    /// A boolean check.
    pub fn holds(id: &str, criterion: Option<u8>, description: &str, holds: bool, detail: String) -> Self {
        Check::new(id, criterion, description, if holds { 1.0 } else { 0.0 }, Bound::Holds, detail)
    }
}

/// One entry of the acceptance catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogueEntry {
    /// Acceptance criterion.
    pub criterion: u8,
    /// Check identifier.
    pub id: &'static str,
    /// Subcommand that produces it.
    pub subcommand: &'static str,
    /// Shipped configuration (relative to the repository root).
    pub config: &'static str,
    /// Tolerance of the shipped configuration.
    pub tolerance: &'static str,
}

const fn entry(
    criterion: u8,
    id: &'static str,
    subcommand: &'static str,
    config: &'static str,
    tolerance: &'static str,
) -> CatalogueEntry {
    CatalogueEntry {
        criterion,
        id,
        subcommand,
        config,
        tolerance,
    }
}

/// Every acceptance check, with the invocation that runs it.
pub const CATALOGUE: &[CatalogueEntry] = &[
    entry(1, "identity.scaling_identity", "identity", "configs/c01_scaling_identity.json", "< 1e-6"),
    entry(2, "conservation.scaling_norm_drift", "conservation", "configs/c02_c03_conservation.json", "< 1e-6"),
    entry(3, "conservation.mass_drift", "conservation", "configs/c02_c03_conservation.json", "< 1e-6"),
    entry(3, "conservation.momentum_drift", "conservation", "configs/c02_c03_conservation.json", "< 1e-6"),
    entry(3, "conservation.energy_drift", "conservation", "configs/c02_c03_conservation.json", "< 1e-6"),
    entry(4, "normalform.identity_residual", "normalform", "configs/c04_c05_normal_form.json", "< 1e-8"),
    entry(4, "normalform.gauged_residual", "normalform", "configs/c04_c05_normal_form.json", "< 1e-8"),
    entry(5, "normalform.order_without_bk", "normalform", "configs/c04_c05_normal_form.json", "2 ± 0.1"),
    entry(5, "normalform.order_without_q3", "normalform", "configs/c04_c05_normal_form.json", "3 ± 0.1"),
    entry(6, "linear.decay_exponent", "linear", "configs/c06_linear_decay.json", "-0.5 ± 0.05"),
    entry(7, "linear.interpolation_constant", "linear", "configs/c07_interpolation.json", "<= 10"),
    entry(8, "identity.hilbert_identity", "identity", "configs/c08_hilbert_identity.json", "< 1e-10"),
    entry(9, "simulate.soliton_residual", "simulate", "configs/c09_soliton.json", "< 1e-8"),
    entry(9, "simulate.soliton_shape", "simulate", "configs/c09_soliton.json", "< 1e-4"),
    entry(9, "simulate.soliton_speed", "simulate", "configs/c09_soliton.json", "< 1e-2"),
    entry(9, "simulate.soliton_direction", "simulate", "configs/c09_soliton.json", "> 0 (leftward)"),
    entry(10, "bilinear.ratio_range", "bilinear", "configs/c10_bilinear.json", "<= 10 (factor)"),
    entry(10, "bilinear.high_band_step", "bilinear", "configs/c10_bilinear.json", "0 ± 0.3 (relative)"),
    entry(11, "convergence.slope", "convergence", "configs/c11_convergence.json", "-1 ± 0.3"),
    entry(11, "convergence.monotone", "convergence", "configs/c11_convergence.json", "holds"),
    entry(12, "decay.exponent", "decay", "configs/c12_small_data_decay.json", "-0.5 ± 0.1"),
    entry(12, "decay.profile_ratio", "decay", "configs/c12_small_data_decay.json", "<= 5"),
    entry(12, "decay.soliton_control", "decay", "configs/c12_small_data_decay.json", "0.5 ± 0.1"),
    entry(13, "identity.moment_cancellation", "identity", "configs/c13_moment.json", "< 1e-8"),
];

/// The catalogue as a text table (one line per check).
pub fn catalogue_table() -> String {
    let mut s = format!("{:<3} {:<32} {:<13} {:<16} {}\n", "#", "check", "subcommand", "tolerance", "invocation");
    for e in CATALOGUE {
        s.push_str(&format!(
            "{:<3} {:<32} {:<13} {:<16} bo-lab {} --config {}\n",
            e.criterion, e.id, e.subcommand, e.tolerance, e.subcommand, e.config
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_reject_nan() {
        for b in [
            Bound::Below(1.0),
            Bound::AtMost(1.0),
            Bound::Within { target: 0.0, tol: 1.0 },
            Bound::Between { lo: -1.0, hi: 1.0 },
            Bound::Positive,
            Bound::Holds,
        ] {
            assert!(!b.accepts(f64::NAN), "{b:?}");
        }
    }

    #[test]
    fn bounds_are_inclusive_where_stated() {
        assert!(!Bound::Below(1.0).accepts(1.0));
        assert!(Bound::AtMost(1.0).accepts(1.0));
        assert!(Bound::Within { target: -0.5, tol: 0.05 }.accepts(-0.46));
        assert!(!Bound::Within { target: -0.5, tol: 0.05 }.accepts(-0.44));
    }

    #[test]
    fn catalogue_covers_every_criterion_once_per_config() {
        for c in 1..=13u8 {
            let configs: std::collections::BTreeSet<_> =
                CATALOGUE.iter().filter(|e| e.criterion == c).map(|e| (e.subcommand, e.config)).collect();
            assert_eq!(configs.len(), 1, "criterion {c}");
        }
        let table = catalogue_table();
        assert_eq!(table.lines().count(), CATALOGUE.len() + 1);
    }
}
