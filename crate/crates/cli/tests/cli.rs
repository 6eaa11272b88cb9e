// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::process::{Command, Output};

use cvqmap::format::fmt_f64;
use cvqmap::harness::diagnose;
use cvqmap::StandardFormCM;

fn cvqmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvqmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

const WORKED: [&str; 9] = ["map", "--s", "2", "--d", "0", "--g", "2", "--lambda", "1"];

#[test]
fn map_worked_example() {
    let out = cvqmap(&WORKED);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    let n = doc["diagnostics"]["qubit_negativity"].as_f64().unwrap();
    assert!((n - 0.10355339).abs() < 1e-8);
    let rho = &doc["steady_state"];
    assert!((rho[3][3][0].as_f64().unwrap() - 0.625).abs() < 1e-12);
    assert!((rho[0][3][0].as_f64().unwrap() + 2f64.sqrt() / 8.0).abs() < 1e-12);
    assert_eq!(rho[0][0].as_array().unwrap().len(), 2);
}

#[test]
fn map_vacuum_gives_ground_state() {
    let out = cvqmap(&["map", "--a", "1", "--b", "1", "--cplus", "0", "--cminus", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["steady_state"][3][3][0].as_f64(), Some(1.0));
    assert_eq!(doc["steady_state"][0][0][0].as_f64(), Some(0.0));
    assert_eq!(doc["diagnostics"]["qubit_negativity"].as_f64(), Some(0.0));
}

#[test]
fn map_output_is_byte_stable() {
    assert_eq!(cvqmap(&WORKED).stdout, cvqmap(&WORKED).stdout);
}

/// serde_json's default float parser may be one ulp off.
fn same(parsed: f64, exact: f64) -> bool {
    (parsed - exact).abs() <= f64::EPSILON * exact.abs()
}

#[test]
fn map_is_a_thin_shell_over_the_library() {
    let args = ["map", "--a", "3.1", "--b", "1.7", "--cplus", "1.2", "--cminus", "-0.9"];
    let doc = json(&cvqmap(&args));
    let lib = diagnose(&StandardFormCM::new(3.1, 1.7, 1.2, -0.9)).unwrap();
    let text = stdout(&cvqmap(&args));
    for (key, value) in [
        ("field_entropy_global", lib.field_entropy_global),
        ("field_negativity", lib.field_negativity),
        ("qubit_entropy_global", lib.qubit_entropy_global),
        ("qubit_entropy_marginal_a", lib.qubit_entropy_marginals.0),
        ("qubit_entropy_marginal_b", lib.qubit_entropy_marginals.1),
        ("qubit_negativity", lib.qubit_negativity),
    ] {
        assert!(text.contains(&format!("\"{key}\": {}", fmt_f64(value))), "{key}");
        assert!(same(doc["diagnostics"][key].as_f64().unwrap(), value), "{key}");
    }
    let m = lib.steady_state.matrix();
    for i in 0..4 {
        for j in 0..4 {
            assert!(same(doc["steady_state"][i][j][0].as_f64().unwrap(), m[(i, j)].re));
        }
    }
}

#[test]
fn unphysical_input_exits_with_domain_code() {
    let out = cvqmap(&["map", "--a", "1", "--b", "1", "--cplus", "0.5", "--cminus", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("V12 + i Omega >= 0"));
    let out = cvqmap(&["map", "--s", "2", "--d", "0", "--g", "3.5", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("2|d|+1 <= g <= 2s-1"));
}

#[test]
fn usage_errors_exit_with_code_two() {
    assert_eq!(cvqmap(&["map", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(cvqmap(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cvqmap(&["map", "--a", "1"]).status.code(), Some(2));
    let mixed = ["map", "--a", "2", "--b", "2", "--cplus", "0", "--cminus", "0", "--s", "2"];
    assert_eq!(cvqmap(&mixed).status.code(), Some(2));
    assert_eq!(cvqmap(&["boundary", "--curve", "nope"]).status.code(), Some(2));
    assert_eq!(cvqmap(&["--help"]).status.code(), Some(0));
}

#[test]
fn evolve_writes_trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let p = path.to_str().unwrap();
    let out = cvqmap(&[
        "evolve", "--s", "2", "--d", "0", "--g", "2", "--lambda", "1", "--tau-max", "2",
        "--steps", "9", "--gamma", "0.5", "--out", p,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines[0].starts_with("tau,re_00_00"));
    assert!(lines[1].starts_with("0.0000000000000000e0,1.0000000000000000e0"));
    let bad = cvqmap(&["evolve", "--s", "2", "--d", "0", "--g", "2", "--lambda", "1", "--gamma", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}

fn sample_bytes(dir: &std::path::Path, name: &str, threads: &str, extra: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut args = vec!["sample", "--kind", "fig1b_negativity_scatter", "--n", "300", "--seed", "77"];
    let p = path.to_str().unwrap().to_string();
    args.extend(["--out", &p]);
    args.extend(extra);
    let out = Command::new(env!("CARGO_BIN_EXE_cvqmap"))
        .args(&args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    fs::read(&path).unwrap()
}

#[test]
fn sample_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let one = sample_bytes(dir.path(), "a.csv", "1", &[]);
    let four = sample_bytes(dir.path(), "b.csv", "4", &[]);
    let seq = sample_bytes(dir.path(), "c.csv", "4", &["--sequential"]);
    assert_eq!(one, four);
    assert_eq!(one, seq);
    let text = String::from_utf8(one).unwrap();
    assert_eq!(text.lines().count(), 301);
    assert!(text.starts_with("index,s,d,g,lambda,"));
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.json")).unwrap()).unwrap();
    assert_eq!(sidecar["kind"], "fig1b_negativity_scatter");
    assert_eq!(sidecar["seed"], 77);
    assert_eq!(sidecar["n_samples"], 300);
    assert!(sidecar["tool_version"].is_string());
}

#[test]
fn sample_rejects_bad_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.csv");
    let p = p.to_str().unwrap();
    let out = cvqmap(&["sample", "--kind", "fig9", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
    let out = cvqmap(&["sample", "--kind", "fig1a_entropy_scatter", "--n", "0", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
    let out = cvqmap(&["sample", "--kind", "fig1a_entropy_scatter", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn boundary_writes_commented_header() {
    let out = cvqmap(&["boundary", "--curve", "qubit_entropy_max", "--points", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "# kind=qubit_entropy_max");
    assert_eq!(lines[1], "# axes=field_entropy");
    assert_eq!(lines[3], "field_entropy,qubit_entropy");
    assert_eq!(lines.len(), 4 + 7);
}

#[test]
fn verify_passes_on_a_correct_build() {
    let out = cvqmap(&["verify", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 10);
}
