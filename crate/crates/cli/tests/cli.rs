use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn threegap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threegap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const GAP: &str = r#"{
  "alpha": {"kind": "quadratic", "a": "0/1", "b": "1/1", "d": 3},
  "q": 1, "P": "1/1", "lambda_multiplier": 1, "variant": "prime",
  "sequences": [{"p": 2, "k": {"u": "0/1", "v": "0/1"}, "n": 0, "N": 10}]
}"#;

#[test]
fn nearest_preset_runs() {
    let dir = TempDir::new().unwrap();
    let out_json = dir.path().join("report.json");
    let cfg = configs().join("nearest_golden.json");
    let out = threegap(&[
        "nearest",
        "--config",
        cfg.to_str().unwrap(),
        "--out-json",
        out_json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out_json).unwrap()).unwrap();
    let distinct = report["distinct_count"].as_u64().unwrap();
    assert!((1..=6).contains(&distinct));
    assert_eq!(report["circle"]["gap_sum_is_P"], true);
}

#[test]
fn bundled_configs_run() {
    for (cmd, file) in [
        ("classical", "classical_sqrt2.json"),
        ("pwl", "tent.json"),
        ("run", "two_sequences.json"),
    ] {
        let cfg = configs().join(file);
        let out = threegap(&[cmd, "--config", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stderr(&out));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(report.is_object());
    }
}

#[test]
fn validation_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "zero.json", &GAP.replace(r#""p": 2"#, r#""p": 0"#));
    let out = threegap(&["run", "--config", &zero]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("zero slope"), "{}", stderr(&out));

    let lambda = write(
        &dir,
        "lambda.json",
        &GAP.replace(r#""lambda_multiplier": 1"#, r#""lambda_multiplier": 0"#),
    );
    let out = threegap(&["run", "--config", &lambda]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("λ must be a positive integer multiple of Pq"));

    let inverted = write(&dir, "inverted.json", &GAP.replace(r#""n": 0"#, r#""n": 11"#));
    let out = threegap(&["run", "--config", &inverted]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("exceeds"));

    let broken = write(
        &dir,
        "broken.json",
        &GAP.replace(r#""P": "1/1""#, r#""P": "one""#),
    );
    let out = threegap(&["run", "--config", &broken]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("field `P`, line 3"), "{}", stderr(&out));

    let out = threegap(&["run", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = threegap(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_precision_floor() {
    let out = threegap(&["oracle-check", "--digits", "10", "--count", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = threegap(&["oracle-check", "--digits", "60", "--count", "3", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn sweep_output_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "sweep.json",
        r#"{"base": {"preset": "nearest", "alpha": {"kind": "nthroot", "r": "15/1", "n": 3}, "M": 2},
            "parameter": {"M_range": {"lo": 1, "hi": 90, "step": 3}}}"#,
    );
    let mut outputs = Vec::new();
    for (i, workers) in ["1", "3", "1"].iter().enumerate() {
        let csv = dir.path().join(format!("{i}.csv"));
        let plot = dir.path().join(format!("{i}.dat"));
        let out = threegap(&[
            "sweep",
            "--config",
            &spec,
            "--workers",
            workers,
            "--out-csv",
            csv.to_str().unwrap(),
            "--out-plotdata",
            plot.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        outputs.push((fs::read(csv).unwrap(), fs::read(plot).unwrap()));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let text = String::from_utf8(outputs[0].0.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("param,N_total,distinct_gaps,bound_3c,bound_satisfied,max_gap_decimal,min_gap_decimal,rigid_count,error")
    );
    // M = 1 is below the nearest-integer minimum and is flagged, not fatal
    assert!(lines.next().unwrap().starts_with("1,,,,,,,,"));
    assert_eq!(text.lines().count(), 31);
}

#[test]
fn empty_sweep_range_rejected() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "sweep.json",
        r#"{"base": {"preset": "classical", "alpha": {"kind": "nthroot", "r": "2/1", "n": 2}, "N": 1},
            "parameter": {"M_range": {"lo": 10, "hi": 5}}}"#,
    );
    let out = threegap(&["sweep", "--config", &spec]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty M_range"));
}

#[test]
fn remark_search_reports_matches() {
    let out = threegap(&["remark-search", "--mmax", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["wraparound_matches"][0]["M"], 75);
    assert_eq!(
        report["wraparound_matches"][0]["rounded"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
}
