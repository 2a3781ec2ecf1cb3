//! Exit codes and file emission of the command-line driver.

use std::path::PathBuf;
use std::process::Command;

fn conley() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conley"))
}

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conley_cli_{name}"));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_accepts_bundled_scenarios() {
    for name in ["saddle2d", "logistic1d", "disconnected"] {
        let status = conley()
            .args(["validate", "--config"])
            .arg(scenario_dir().join(format!("{name}.json")))
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0), "{name}");
    }
}

#[test]
fn validate_rejects_bad_configs_with_code_two() {
    let dir = tmp_dir("bad");
    // malformed json
    let bad = dir.join("malformed.json");
    std::fs::write(&bad, "{not json").unwrap();
    let status = conley()
        .args(["validate", "--config"])
        .arg(&bad)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // missing grid section
    let missing = dir.join("missing.json");
    std::fs::write(
        &missing,
        r#"{"system": {"name": "saddle2d"},
            "time": {"tau": 0.2, "slices": 10},
            "regions": {"n": [{"lo": [-1,-1], "hi": [1,1]}]}}"#,
    )
    .unwrap();
    let status = conley()
        .args(["validate", "--config"])
        .arg(&missing)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // zero tau with a visible message
    let zero_tau = dir.join("tau.json");
    std::fs::write(
        &zero_tau,
        r#"{"system": {"name": "saddle2d"},
            "grid": {"lower": [-1,-1], "upper": [1,1], "divisions": [8,8]},
            "time": {"tau": 0.0, "slices": 10},
            "regions": {"n": [{"lo": [-1,-1], "hi": [1,1]}]}}"#,
    )
    .unwrap();
    let out = conley()
        .args(["validate", "--config"])
        .arg(&zero_tau)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("time.tau must be positive"));
}

#[test]
fn run_writes_deterministic_reports() {
    // identical effective configs: same out path, different directories
    let dirs = [tmp_dir("run_a"), tmp_dir("run_b")];
    for dir in &dirs {
        let status = conley()
            .current_dir(dir)
            .args(["run", "--config"])
            .arg(scenario_dir().join("disconnected.json"))
            .args(["--out", "report.json"])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    let a = std::fs::read(dirs[0].join("report.json")).unwrap();
    let b = std::fs::read(dirs[1].join("report.json")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "reports must be byte-identical");
}

#[test]
fn homology_prints_slice_ranks() {
    let out = conley()
        .args(["homology", "--config"])
        .arg(scenario_dir().join("saddle2d.json"))
        .args(["--slice", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["ranks"], serde_json::json!([0, 1]));
}

#[test]
fn sweep_emits_one_row_per_amplitude() {
    let dir = tmp_dir("sweep");
    let out = dir.join("sweep.json");
    let status = conley()
        .args(["sweep", "--config"])
        .arg(scenario_dir().join("logistic1d.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
}
