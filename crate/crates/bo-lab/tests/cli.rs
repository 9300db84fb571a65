//! End-to-end behavior of the `bo-lab` binary: configuration errors, exit
//! codes, manifests, determinism and the emitted files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bo_lab::{canonical_json, parse_config};
use bo_spectral::Snapshot;
use proptest::prelude::*;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bo-lab"))
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(sub: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    bin()
        .arg(sub)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

fn manifest(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap()
}

fn check<'a>(m: &'a Value, id: &str) -> &'a Value {
    m["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

const SMALL_GAUSSIAN: &str = r#"{
  "grid": {"n_points": 1024, "length": 201.06192982974676},
  "initial_data": {"kind": "gaussian", "width": 1.0, "eps": 0.1},
  "integrator": {"dt": 0.01, "t_end": 0.5, "snapshot_cadence": 10},
  "output": {"formats": ["csv", "json", "bof1"]}
}"#;

#[test]
fn simulate_writes_tables_snapshots_and_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "g.json", SMALL_GAUSSIAN);
    let out = dir.path().join("out");
    let o = run("simulate", &cfg, &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(&out);
    assert_eq!(m["status"], "passed");
    assert_eq!(m["subcommand"], "simulate");
    assert_eq!(m["snapshot_format"], "BOF1");
    assert_eq!(m["versions"]["bo-lab"], env!("CARGO_PKG_VERSION"));
    assert!(m["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(m["config"]["integrator"]["name"], "if-rk4");
    let csv = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "t,mass,momentum,energy,sup,mean");
    assert_eq!(csv.lines().count(), 1 + 6);
    let snap = Snapshot::read_from(fs::File::open(out.join("snapshots/snap_00005.bof1")).unwrap()).unwrap();
    assert_eq!(snap.n, 1024);
    assert_eq!(snap.time, 0.5);
    // The copied configuration is the canonical form and parses back.
    let copy = fs::read_to_string(out.join("config.json")).unwrap();
    assert_eq!(canonical_json(&parse_config(&copy).unwrap()), copy);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "g.json", SMALL_GAUSSIAN);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(run("simulate", &cfg, &a, &[]).status.code(), Some(0));
    assert_eq!(run("simulate", &cfg, &b, &[]).status.code(), Some(0));
    let mut names: Vec<_> = fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 5);
    for name in names {
        let (pa, pb) = (a.join(&name), b.join(&name));
        if pa.is_dir() {
            continue;
        }
        if name == "manifest.json" || name == "config.json" {
            // Differ only in the output directory and the wall time.
            let strip = |p: &Path| {
                let mut v: Value = serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
                let root = if name == "manifest.json" {
                    v.as_object_mut().unwrap().remove("wall_time_seconds");
                    v.as_object_mut().unwrap().remove("files");
                    v.get_mut("config").unwrap()
                } else {
                    &mut v
                };
                root["output"]["directory"] = Value::Null;
                v
            };
            assert_eq!(strip(&pa), strip(&pb), "{name:?}");
        } else {
            assert_eq!(fs::read(&pa).unwrap(), fs::read(&pb).unwrap(), "{name:?}");
        }
    }
    for i in 0..6 {
        let f = format!("snapshots/snap_{i:05}.bof1");
        assert_eq!(fs::read(a.join(&f)).unwrap(), fs::read(b.join(&f)).unwrap());
    }
}

#[test]
fn unknown_keys_exit_with_the_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"grid": {"n_points": 64, "length": 10.0}, "integrator": {"dt": 0.1, "stepper": "euler"}}"#,
    );
    let o = run("simulate", &cfg, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("integrator") && err.contains("unknown field `stepper`"), "{err}");
    assert!(!dir.path().join("out").exists(), "nothing runs on an invalid configuration");
}

#[test]
fn nonpositive_dt_is_named_in_the_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "dt.json",
        r#"{"grid": {"n_points": 64, "length": 10.0}, "initial_data": {"kind": "gaussian"}, "integrator": {"dt": 0.0}}"#,
    );
    let o = run("simulate", &cfg, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("integrator.dt: must be finite and positive"));
}

#[test]
fn missing_initial_data_is_a_config_error_with_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", r#"{"grid": {"n_points": 64, "length": 10.0}}"#);
    let o = run("simulate", &cfg, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("initial_data"));
}

#[test]
fn divergence_exits_nonzero_and_records_the_last_good_time() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "div.json",
        r#"{"grid": {"n_points": 256, "length": 64.0},
            "initial_data": {"kind": "gaussian", "amplitude": 50.0, "width": 1.0},
            "integrator": {"dt": 0.5, "t_end": 50.0, "snapshot_cadence": 1, "cfl": null}}"#,
    );
    let out = dir.path().join("out");
    let o = run("simulate", &cfg, &out, &[]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stdout));
    let m = manifest(&out);
    assert_eq!(m["status"], "error");
    assert!(m["error"].as_str().unwrap().contains("divergence"));
    let t = m["last_good_time"].as_f64().expect("last good time recorded");
    assert!((0.0..50.0).contains(&t));
    assert!(String::from_utf8_lossy(&o.stderr).contains("last good time"));
}

#[test]
fn identity_on_a_gaussian_records_a_small_scaling_residual() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "id.json",
        r#"{"grid": {"n_points": 4096, "length": 804.247719318987},
            "initial_data": {"kind": "gaussian", "width": 1.0, "eps": 0.1},
            "diagnostics": {"identity": {}}}"#,
    );
    let out = dir.path().join("out");
    let o = run("identity", &cfg, &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let m = manifest(&out);
    let c = check(&m, "identity.scaling_identity");
    assert!(c["value"].as_f64().unwrap() < 1e-6);
    assert_eq!(c["criterion"], 1);
    assert_eq!(c["passed"], true);
    assert!(check(&m, "identity.hilbert_identity")["value"].as_f64().unwrap() < 1e-10);
}

#[test]
fn convergence_emits_one_row_per_index() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "conv.json",
        r#"{"grid": {"n_points": 1024, "length": 50.26548245743669},
            "initial_data": {"kind": "signed_gaussian", "width": 1.0, "eps": 0.1},
            "integrator": {"dt": 0.01, "t_end": 0.2, "snapshot_cadence": 5},
            "diagnostics": {"convergence": {"n_list": [3, 4, 5]}}}"#,
    );
    let out = dir.path().join("out");
    let o = run("convergence", &cfg, &out, &[]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let csv = fs::read_to_string(out.join("convergence.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "n,sup_h_minus_half_difference");
    assert_eq!(rows.len(), 4);
    for (row, n) in rows[1..].iter().zip(["3", "4", "5"]) {
        let mut cols = row.split(',');
        assert_eq!(cols.next(), Some(n));
        assert!(cols.next().unwrap().parse::<f64>().unwrap() > 0.0);
    }
    let json: Value = serde_json::from_str(&fs::read_to_string(out.join("convergence.json")).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn seed_flag_overrides_the_configured_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "env.json",
        r#"{"grid": {"n_points": 1024, "length": 201.06192982974676},
            "initial_data": {"kind": "random_localized", "eps": 0.1},
            "diagnostics": {"envelope": {"delta": 0.2}}, "seed": 3}"#,
    );
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    assert_eq!(run("envelope", &cfg, &a, &[]).status.code(), Some(0));
    assert_eq!(run("envelope", &cfg, &b, &["--seed", "3"]).status.code(), Some(0));
    assert_eq!(run("envelope", &cfg, &c, &["--seed", "4"]).status.code(), Some(0));
    let read = |d: &Path| fs::read(d.join("envelope.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
    assert_eq!(manifest(&c)["config"]["seed"], 4);
    assert_eq!(check(&manifest(&a), "envelope.admissible")["passed"], true);
}

#[test]
fn several_configs_run_in_parallel_into_subdirectories() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_config(dir.path(), "first.json", SMALL_GAUSSIAN);
    let b = write_config(dir.path(), "second.json", SMALL_GAUSSIAN);
    let out = dir.path().join("out");
    let o = bin()
        .env("BO_LAB_THREADS", "2")
        .args(["simulate", "--config"])
        .arg(&a)
        .arg("--config")
        .arg(&b)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read(out.join("first/trajectory.csv")).unwrap(),
        fs::read(out.join("second/trajectory.csv")).unwrap()
    );
}

#[test]
fn list_checks_enumerates_every_criterion() {
    let o = bin().arg("--list-checks").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    for c in 1..=13 {
        assert!(text.lines().any(|l| l.starts_with(&format!("{c} "))), "criterion {c}");
    }
    for e in bo_lab::CATALOGUE {
        assert!(configs_dir().join(e.config.trim_start_matches("configs/")).exists(), "{}", e.config);
    }
}

#[test]
fn shipped_configs_are_valid_and_canonical_round_trips() {
    let mut n = 0;
    for entry in fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let cfg = parse_config(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let once = canonical_json(&cfg);
        assert_eq!(canonical_json(&parse_config(&once).unwrap()), once);
        n += 1;
    }
    assert!(n >= 13);
}

#[test]
fn missing_subcommand_or_config_is_a_usage_error() {
    assert_eq!(bin().output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("simulate").output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["simulate", "--config", "/nonexistent.json"]).output().unwrap().status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_emission_is_idempotent(
        n in 4usize..2048,
        length in 0.1f64..1e4,
        dt in 1e-6f64..1e-1,
        cadence in 1u64..50,
        extra in 1.0f64..100.0,
        seed in any::<u64>(),
        c in 0.01f64..2.0,
        x0 in -10.0f64..10.0,
        delta in 0.01f64..1.0,
    ) {
        let t_end = dt * cadence as f64 * extra;
        let text = format!(
            r#"{{"grid": {{"n_points": {}, "length": {length:?}}},
                "initial_data": {{"kind": "soliton", "c": {c:?}, "x0": {x0:?}}},
                "integrator": {{"dt": {dt:?}, "t_end": {t_end:?}, "snapshot_cadence": {cadence}}},
                "diagnostics": {{"envelope": {{"delta": {delta:?}}}}},
                "seed": {seed}}}"#,
            2 * n
        );
        let cfg = parse_config(&text).unwrap();
        let once = canonical_json(&cfg);
        let back = parse_config(&once).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(canonical_json(&back), once);
    }
}
