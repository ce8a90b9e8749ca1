// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn weakinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakinv")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_config(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_column(path: &Path, col: usize) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().parse().unwrap())
        .collect()
}

fn literal_projector(n: usize, k: usize) -> Value {
    let entries: Vec<Value> =
        (0..n * n).map(|i| if i == k * n + k { json!([1.0, 0.0]) } else { json!([0.0, 0.0]) }).collect();
    Value::Array(entries)
}

fn sz() -> Value {
    json!([[1, 0], [0, 0], [0, 0], [-1, 0]])
}

#[test]
fn simulate_defaults_writes_files() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("run");
    let res = weakinv(&["simulate", "--scenario", "amp-damp", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let monitors = read_json(&out.join("monitors.json"));
    assert_eq!(monitors["passed"], json!(true));
    let header = fs::read_to_string(out.join("state.csv")).unwrap();
    assert!(header.starts_with("t,re_00,im_00,re_01,im_01,re_10,im_10,re_11,im_11\n"));
    assert_eq!(header.lines().count(), 5002);
    // ρ_11(5) = e^{-5}
    let p1 = csv_column(&out.join("state.csv"), 7);
    assert!((p1.last().unwrap() - (-5.0f64).exp()).abs() < 1e-8);
}

#[test]
fn zero_steps_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "bad.json",
        &json!({"scenario": "amp-damp", "grid": {"t_start": 0.0, "t_end": 1.0, "n_steps": 0}}),
    );
    let res = weakinv(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&res), 1);
    assert!(String::from_utf8_lossy(&res.stderr).contains("grid.n_steps must be ≥ 1"));
}

#[test]
fn malformed_config_names_field() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "bad.json", &json!({"scenario": "amp-damp", "method": "euler"}));
    let res = weakinv(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&res), 1);
    assert!(String::from_utf8_lossy(&res.stderr).contains("method"));
    assert_eq!(code(&weakinv(&["simulate"])), 1);
    assert_eq!(code(&weakinv(&["simulate", "--scenario", "nope"])), 1);
}

#[test]
fn top_level_population_flags_leakage() {
    let tmp = TempDir::new().unwrap();
    let n = 6;
    let out = tmp.path().join("leak");
    let cfg = write_config(
        tmp.path(),
        "leak.json",
        &json!({
            "scenario": "damped-ho",
            "params": {"n_trunc": n},
            "rho0": literal_projector(n, n - 1),
            "grid": {"t_start": 0.0, "t_end": 1.0, "n_steps": 200},
            "output_dir": out,
        }),
    );
    let res = weakinv(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&res), 2);
    let monitors = read_json(&out.join("monitors.json"));
    assert_eq!(monitors["flags"]["leakage"], json!(true));
    assert_eq!(monitors["truncation_dim"], json!(n));
}

#[test]
fn invariant_sz_is_weak_and_conserved() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("inv");
    let cfg = write_config(
        tmp.path(),
        "inv.json",
        &json!({"scenario": "amp-damp", "invariant_seed": "sz", "grid": {"t_start": 0.0, "t_end": 3.0, "n_steps": 3000}}),
    );
    let res = weakinv(&["invariant", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let expectation = csv_column(&out.join("expectation.csv"), 1);
    assert_eq!(expectation.len(), 3001);
    assert!(expectation.iter().all(|v| (v + 1.0).abs() <= 1e-8));
    let report = read_json(&out.join("invariant_report.json"));
    assert_eq!(report["classification"], json!("weak"));
    // lower eigenvalue at t = 1 is 1 − 2e
    let lower = csv_column(&out.join("spectrum.csv"), 1);
    assert!((lower[1000] - (1.0 - 2.0 * std::f64::consts::E)).abs() <= 1e-6);
}

#[test]
fn identity_seed_is_strong_like_everywhere() {
    let tmp = TempDir::new().unwrap();
    for name in ["amp-damp", "dephase", "damped-ho"] {
        let out = tmp.path().join(name);
        let cfg = write_config(
            tmp.path(),
            &format!("{name}.json"),
            &json!({"scenario": name, "invariant_seed": "identity", "grid": {"t_start": 0.0, "t_end": 1.0, "n_steps": 200}}),
        );
        let res = weakinv(&["invariant", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(code(&res), 0, "{name}");
        assert!(csv_column(&out.join("expectation.csv"), 1).iter().all(|v| (v - 1.0).abs() <= 1e-12));
        assert_eq!(read_json(&out.join("invariant_report.json"))["classification"], json!("strong-like"));
    }
}

#[test]
fn closed_amplitude_damping_hamiltonian_seed_is_strong_like() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("closed");
    let cfg = write_config(
        tmp.path(),
        "closed.json",
        &json!({"scenario": "amp-damp", "params": {"gamma": 0.0}, "invariant_seed": "hamiltonian"}),
    );
    let res = weakinv(&["invariant", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    assert_eq!(read_json(&out.join("invariant_report.json"))["classification"], json!("strong-like"));
}

#[test]
fn invariant_blowup_exits_two_with_step() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "blow.json",
        &json!({"scenario": "amp-damp", "params": {"gamma": 5.0}, "grid": {"t_start": 0.0, "t_end": 3.0, "n_steps": 3000},
                "output_dir": tmp.path().join("blow")}),
    );
    let res = weakinv(&["invariant", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&res), 2);
    assert!(String::from_utf8_lossy(&res.stderr).contains("at step"));
}

fn action_run(tmp: &Path, steps: usize) -> Value {
    let out = tmp.join(format!("action{steps}"));
    let cfg = write_config(
        tmp,
        &format!("action{steps}.json"),
        &json!({"scenario": "amp-damp", "lambda_final": sz(), "grid": {"t_start": 0.0, "t_end": 1.0, "n_steps": 1000}}),
    );
    let res = weakinv(&[
        "action-check",
        "--config",
        cfg.to_str().unwrap(),
        "--steps",
        &steps.to_string(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stdout));
    read_json(&out.join("action_report.json"))
}

#[test]
fn action_residuals_shrink_fourfold() {
    let tmp = TempDir::new().unwrap();
    let coarse = action_run(tmp.path(), 1000);
    let fine = action_run(tmp.path(), 2000);
    for key in ["grad_rho_residual", "grad_lam_residual"] {
        let ratio = coarse["stationarity"][key].as_f64().unwrap() / fine["stationarity"][key].as_f64().unwrap();
        assert!((3.5..4.5).contains(&ratio), "{key}: {ratio}");
    }
    assert!(coarse["gauge"]["defect"].as_f64().unwrap() <= 1e-10);
    assert_eq!(coarse["gauge"]["final_unchanged"], json!(true));
}

#[test]
fn trivial_inline_model_has_zero_action() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("trivial");
    let zero = json!([[0, 0], [0, 0], [0, 0], [0, 0]]);
    let cfg = write_config(
        tmp.path(),
        "trivial.json",
        &json!({
            "scenario": {"dim": 2, "hamiltonian": {"kind": "constant", "value": zero}},
            "rho0": [[0.5, 0], [0.5, 0], [0.5, 0], [0.5, 0]],
            "lambda_final": zero,
            "grid": {"t_start": 0.0, "t_end": 1.0, "n_steps": 100},
            "output_dir": out,
        }),
    );
    let res = weakinv(&["action-check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let report = read_json(&out.join("action_report.json"));
    assert_eq!(report["stationarity"]["action"].as_f64().unwrap(), 0.0);
    for key in ["grad_rho_residual", "grad_lam_residual"] {
        assert!(report["stationarity"][key].as_f64().unwrap() <= 1e-13);
    }
}

#[test]
fn action_check_requires_final_condition() {
    let tmp = TempDir::new().unwrap();
    let res = weakinv(&["action-check", "--scenario", "amp-damp", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&res), 1);
    assert!(String::from_utf8_lossy(&res.stderr).contains("lambda_final"));
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("v");
    let res = weakinv(&["verify", "--seed", "42", "--trials", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    let report = read_json(&out.join("verify_report.json"));
    assert_eq!(report["all_passed"], json!(true));
    let pairing = report["properties"].as_array().unwrap().iter().find(|p| p["name"] == "adjoint_pairing").unwrap();
    assert!(pairing["worst_relative"].as_f64().unwrap() <= 1e-12);

    let res = weakinv(&["verify", "--trials", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    assert_eq!(read_json(&out.join("verify_report.json"))["trials"], json!(1));

    let res = weakinv(&["verify", "--seed", "42", "--trials", "10", "--break-adjoint", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 2);
    let report = read_json(&out.join("verify_report.json"));
    let pairing = report["properties"].as_array().unwrap().iter().find(|p| p["name"] == "adjoint_pairing").unwrap();
    assert_eq!(pairing["passed"], json!(false));

    assert_eq!(code(&weakinv(&["verify", "--trials", "0", "--out", out.to_str().unwrap()])), 1);
}

#[test]
fn outputs_are_deterministic() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "det.json",
        &json!({"scenario": "damped-ho", "params": {"n_trunc": 5}, "lambda_final": literal_projector(5, 0),
                "grid": {"t_start": 0.0, "t_end": 1.0, "n_steps": 1000}, "seed": 3}),
    );
    let mut files = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        for cmd in ["simulate", "invariant", "action-check"] {
            let res = weakinv(&[cmd, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
            assert_eq!(code(&res), 0, "{cmd}");
        }
        let mut names: Vec<PathBuf> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
        names.sort();
        files.push(names.iter().map(|p| fs::read(p).unwrap()).collect::<Vec<_>>());
    }
    assert_eq!(files[0].len(), 6);
    assert_eq!(files[0], files[1]);
}

#[test]
fn several_configs_run_in_parallel() {
    let tmp = TempDir::new().unwrap();
    let a = write_config(tmp.path(), "a.json", &json!({"scenario": "amp-damp"}));
    let b = write_config(tmp.path(), "b.json", &json!({"scenario": "dephase", "method": "midpoint"}));
    let out = tmp.path().join("sweep");
    let res = weakinv(&[
        "simulate",
        "--config",
        a.to_str().unwrap(),
        "--config",
        b.to_str().unwrap(),
        "--steps",
        "500",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0);
    for stem in ["a", "b"] {
        let monitors = read_json(&out.join(stem).join("monitors.json"));
        assert_eq!(monitors["grid"]["n_steps"], json!(500));
    }
    assert_eq!(read_json(&out.join("b").join("monitors.json"))["method"], json!("midpoint"));
}
