//! End-to-end tests of the saxn binary: output contracts, stdout purity,
//! and the exit-code policy (0 ok, 1 usage, 2 data).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn saxn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saxn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

/// 150-point wavy fixture, one header row.
fn demo_csv(dir: &Path) -> PathBuf {
    let mut text = String::from("value\n");
    for t in 0..150 {
        let v = (t as f64 * 0.21).sin() * (1.0 + 0.2 * (t as f64 * 0.01).cos());
        text.push_str(&format!("{v:.6}\n"));
    }
    let path = dir.join("demo150.csv");
    std::fs::write(&path, text).unwrap();
    path
}

fn constant_csv(dir: &Path) -> PathBuf {
    let path = dir.join("const.csv");
    std::fs::write(&path, "5.0\n".repeat(20)).unwrap();
    path
}

#[test]
fn version_and_help_exit_zero() {
    let out = saxn(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("saxn "));
    let out = saxn(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("mindist"));
}

#[test]
fn sax_emits_word_of_requested_length() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let out = saxn(&["sax", input.to_str().unwrap(), "-m", "15", "-k", "3"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let word = stdout(&out);
    let word = word.trim();
    assert_eq!(word.len(), 15);
    assert!(word.chars().all(|c| ('a'..='c').contains(&c)));
}

#[test]
fn sax_width_one_symbolizes_raw_values_of_normalized_input() {
    // pre-normalized input, w=1: PAA is the identity, so each sample maps
    // straight to its region
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prenorm.csv");
    std::fs::write(&path, "-1.0\n1.0\n-1.0\n1.0\n").unwrap();
    let out = saxn(&[
        "sax",
        path.to_str().unwrap(),
        "-w",
        "1",
        "-k",
        "3",
        "--renorm",
        "never",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "acac");
}

#[test]
fn sax_report_json_has_contract_fields() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let report = dir.path().join("report.json");
    let out = saxn(&[
        "sax",
        input.to_str().unwrap(),
        "-w",
        "10",
        "-k",
        "4",
        "--renorm",
        "threshold",
        "--tau",
        "0.95",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for field in [
        "pre_sigma",
        "post_sigma",
        "renormalized",
        "m",
        "k",
        "w",
        "n",
    ] {
        assert!(json.get(field).is_some(), "missing {field}");
    }
    assert_eq!(json["n"], 150);
    assert_eq!(json["w"], 10);
    assert_eq!(json["m"], 15);
}

#[test]
fn sax_usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let path = input.to_str().unwrap();
    // both -m and -w
    assert_eq!(
        code(&saxn(&["sax", path, "-m", "15", "-w", "10", "-k", "3"])),
        1
    );
    // neither
    assert_eq!(code(&saxn(&["sax", path, "-k", "3"])), 1);
    // tau outside (0, 1]
    assert_eq!(
        code(&saxn(&[
            "sax",
            path,
            "-m",
            "15",
            "-k",
            "3",
            "--renorm",
            "threshold",
            "--tau",
            "1.5"
        ])),
        1
    );
}

#[test]
fn sax_data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let constant = constant_csv(dir.path());
    // missing file
    let missing = dir.path().join("missing.csv");
    let out = saxn(&["sax", missing.to_str().unwrap(), "-m", "5", "-k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("file not found"));
    // constant series
    let out = saxn(&["sax", constant.to_str().unwrap(), "-m", "5", "-k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("degenerate"));
    // indivisible without --truncate
    let out = saxn(&["sax", input.to_str().unwrap(), "-m", "7", "-k", "3"]);
    assert_eq!(code(&out), 2);
    // same invocation succeeds with --truncate
    let out = saxn(&[
        "sax",
        input.to_str().unwrap(),
        "-m",
        "7",
        "-k",
        "3",
        "--truncate",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out).trim().len(), 7);
}

#[test]
fn mindist_matches_reference_values() {
    let out = saxn(&["mindist", "ab", "ab", "-k", "4", "-n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), 0.0);

    let out = saxn(&["mindist", "ac", "ca", "-k", "4", "-n", "4"]);
    assert_eq!(code(&out), 0);
    let distance: f64 = stdout(&out).trim().parse().unwrap();
    assert!((distance - 1.348_98).abs() < 1e-4, "{distance}");

    // adjacent symbols cost nothing
    let out = saxn(&["mindist", "ab", "ba", "-k", "4", "-n", "4"]);
    assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), 0.0);
}

#[test]
fn mindist_shape_and_symbol_errors_exit_two() {
    assert_eq!(
        code(&saxn(&["mindist", "ab", "abc", "-k", "4", "-n", "6"])),
        2
    );
    assert_eq!(
        code(&saxn(&["mindist", "az", "aa", "-k", "4", "-n", "4"])),
        2
    );
    assert_eq!(
        code(&saxn(&["mindist", "ab", "ab", "-k", "1", "-n", "4"])),
        2
    );
}

#[test]
fn study_preset_writes_run_dir_and_prints_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = saxn(&[
        "study",
        "--preset",
        "chisq-synthetic",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    // stdout purity: the whole of stdout is one JSON document
    let manifest: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(manifest["root_seed"], 42);
    for file in manifest["files"].as_array().unwrap() {
        assert!(out_dir.join(file.as_str().unwrap()).exists());
    }
    assert!(out_dir.join("manifest.json").exists());
}

#[test]
fn study_rejects_bad_invocations() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out_str = out_dir.to_str().unwrap();
    // neither config nor preset
    assert_eq!(code(&saxn(&["study", "--out", out_str])), 1);
    // unknown preset
    let out = saxn(&["study", "--preset", "nope", "--out", out_str]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("available"));
    // config file that is not valid JSON
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(
        code(&saxn(&["study", bad.to_str().unwrap(), "--out", out_str])),
        2
    );
    // config that parses but fails validation
    let invalid = dir.path().join("invalid.json");
    std::fs::write(&invalid, r#"{"widths": [], "studies": ["sigma"]}"#).unwrap();
    assert_eq!(
        code(&saxn(&[
            "study",
            invalid.to_str().unwrap(),
            "--out",
            out_str
        ])),
        2
    );
}

#[test]
fn study_same_seed_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = saxn(&[
            "study",
            "--preset",
            "chisq-synthetic",
            "--seed",
            "7",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        out_dir
    };
    let a = run("a");
    let b = run("b");
    for entry in std::fs::read_dir(&a).unwrap() {
        let name = entry.unwrap().file_name();
        let left = std::fs::read(a.join(&name)).unwrap();
        let right = std::fs::read(b.join(&name)).unwrap();
        assert_eq!(left, right, "{name:?} differs between runs");
    }
}

#[test]
fn study_config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        r#"{
            "seed": 11,
            "widths": [2, 5],
            "cardinalities": [5],
            "studies": ["sigma", "normality"],
            "synthetic": [
                {"kind": "white-noise", "name": "noise", "sigma": 1.0, "length": 2000}
            ]
        }"#,
    )
    .unwrap();
    let out_dir = dir.path().join("run");
    let out = saxn(&[
        "study",
        config.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(out_dir.join("sigma_table.csv").exists());
    assert!(out_dir.join("normality.json").exists());
    let csv = std::fs::read_to_string(out_dir.join("sigma_table.csv")).unwrap();
    assert!(csv.starts_with("series,2,5\n"));
    assert!(csv.contains("noise,"));
}

#[test]
fn diag_acf_emits_csv_with_band() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let out = saxn(&["diag", input.to_str().unwrap(), "--acf", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "lag,coefficient,label,band");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[1].parse::<f64>().unwrap(), 1.0);
    // early lags of the wave decay monotonically and stay positive
    let coeffs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(coeffs.len(), 11);
    assert!(coeffs[..6].windows(2).all(|p| p[1] < p[0] && p[1] > 0.0));
}

#[test]
fn diag_jb_emits_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let out = saxn(&["diag", input.to_str().unwrap(), "--jb"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for field in ["jb_statistic", "p_value", "skewness", "kurtosis"] {
        assert!(json.get(field).is_some(), "missing {field}");
    }
}

#[test]
fn diag_hist_emits_symbol_rows() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let out = saxn(&[
        "diag",
        input.to_str().unwrap(),
        "--hist",
        "-k",
        "5",
        "-w",
        "10",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "symbol,frequency,label");
    assert_eq!(lines.len(), 6);
    let total: u64 = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 15);
}

#[test]
fn diag_usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = demo_csv(dir.path());
    let path = input.to_str().unwrap();
    // no diagnostic selected
    assert_eq!(code(&saxn(&["diag", path])), 1);
    // two diagnostics at once
    assert_eq!(code(&saxn(&["diag", path, "--acf", "5", "--jb"])), 1);
    // --hist without -k / -w
    assert_eq!(code(&saxn(&["diag", path, "--hist"])), 1);
    assert_eq!(code(&saxn(&["diag", path, "--hist", "-k", "5"])), 1);
}

#[test]
fn diag_data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.dat");
    assert_eq!(code(&saxn(&["diag", missing.to_str().unwrap(), "--jb"])), 2);
    // lag too large for the series
    let input = demo_csv(dir.path());
    assert_eq!(
        code(&saxn(&["diag", input.to_str().unwrap(), "--acf", "150"])),
        2
    );
}

#[test]
fn named_column_selection_works_from_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.csv");
    std::fs::write(&path, "alpha,beta\n1,5\n2,6\n3,7\n4,8\n").unwrap();
    let out = saxn(&[
        "sax",
        path.to_str().unwrap(),
        "--column",
        "beta",
        "-m",
        "2",
        "-k",
        "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "ab");
}
