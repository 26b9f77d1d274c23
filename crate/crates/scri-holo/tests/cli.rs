//! End-to-end checks of the command-line frontend: exit codes, file
//! outputs, and byte-level determinism under a fixed seed.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scri-holo"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scri-holo-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn demo_config(dir: &Path) -> PathBuf {
    let cfg = scri_holo::config::ExperimentConfig::demo();
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(&cfg).unwrap()).unwrap();
    path
}

/// Strip the timestamp field before comparing outputs.
fn canonical(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("generated_unix_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn missing_grid_spec_is_config_error_exit_2() {
    let dir = tmp_dir("e2");
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"schema":"scri-holo/1","source":{"terms":[]},"conformal":{"kind":"one"}}"#,
    )
    .unwrap();
    let out = bin()
        .args(["transform", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(2),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn unknown_criterion_is_config_error() {
    let dir = tmp_dir("crit");
    let out = bin()
        .args(["suite", "--criterion", "a99_nonsense", "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_runs_and_is_deterministic() {
    let dir = tmp_dir("det");
    let cfg = demo_config(&dir);
    for run in ["r1", "r2"] {
        let out = bin()
            .args(["transform", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(dir.join(run))
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let csv1 = std::fs::read(dir.join("r1/transform_field.csv")).unwrap();
    let csv2 = std::fs::read(dir.join("r2/transform_field.csv")).unwrap();
    assert_eq!(csv1, csv2, "field CSV not byte-identical");
    let sum1 = std::fs::read_to_string(dir.join("r1/transform_summary.json")).unwrap();
    let sum2 = std::fs::read_to_string(dir.join("r2/transform_summary.json")).unwrap();
    assert_eq!(canonical(&sum1), canonical(&sum2), "summary drifted");
    assert!(sum1.contains("\"norm_identity\": \"pass\""));
}

#[test]
fn qnec_demo_passes_and_reports() {
    let dir = tmp_dir("qnec");
    let cfg = demo_config(&dir);
    let out = bin()
        .args(["qnec", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("out/qnec_scan.csv")).unwrap();
    assert!(csv.starts_with("t,s,s_prime,s_second,s_second_fd\r\n"));
    assert_eq!(csv.lines().count(), 1 + 21);
    let summary = std::fs::read_to_string(dir.join("out/qnec_summary.json")).unwrap();
    assert!(summary.contains("\"qnec\": \"pass\""));
}

#[test]
fn qnec_negative_deformation_is_config_error() {
    let dir = tmp_dir("negdef");
    let mut cfg = scri_holo::config::ExperimentConfig::demo();
    cfg.deformation = Some(scri_holo::config::DeformationSpec {
        profile: scri_holo::config::CutSpec::Constant { value: -0.4 },
        t_min: 0.0,
        t_max: 1.0,
        steps: 21,
    });
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(&cfg).unwrap()).unwrap();
    let out = bin()
        .args(["qnec", "--config"])
        .arg(&path)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_single_criterion_filter() {
    let dir = tmp_dir("suite1");
    let out = bin()
        .args(["suite", "--criterion", "a10_spot_values", "--out"])
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("a10_spot_values pass"));
    let report = std::fs::read_to_string(dir.join("out/suite_report.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["criteria"].as_array().unwrap().len(), 1);
    assert_eq!(parsed["all_pass"], serde_json::Value::Bool(true));
}
