// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;

use serde::Serialize;
use weakinv::action::{action_report, gauge_shift_check, solution_path, ActionReport, GaugeShiftReport};
use weakinv::dynamics::{
    conservation_series, format_float, integrate_invariant, integrate_state, write_trajectory_csv, Method,
    MonitorReport, SeedTime, TimeGrid,
};
use weakinv::invariant::{analyze, spectrum_series, InvariantReport};
use weakinv::random;
use weakinv::scenarios::LEAKAGE_LIMIT;
use weakinv::verify::{self, VerifyOptions, VerifyReport};

use crate::config::{Bounds, ResolvedRun};
use crate::CliError;

/// Result of a command that ran to completion.
#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub summary: String,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| io_err(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn write_rows(path: &Path, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    w.write_record(header).map_err(|e| io_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

#[derive(Debug, Serialize)]
struct MonitorFlags {
    trace: bool,
    positivity: bool,
    leakage: bool,
}

#[derive(Debug, Serialize)]
struct MonitorsFile<'a> {
    scenario: &'a str,
    method: Method,
    grid: TimeGrid,
    monitors: MonitorReport,
    truncation_dim: Option<usize>,
    leakage_limit: f64,
    /// `true` marks a violated monitor.
    flags: MonitorFlags,
    passed: bool,
}

pub fn simulate(run: &ResolvedRun) -> Result<Outcome, CliError> {
    prepare_dir(&run.output_dir)?;
    let (state, monitors) = integrate_state(&run.model, &run.rho0, &run.grid, run.method)?;
    let csv_path = run.output_dir.join("state.csv");
    let file = fs::File::create(&csv_path).map_err(|e| io_err(&csv_path, e))?;
    write_trajectory_csv(&state, std::io::BufWriter::new(file))?;

    let Bounds { trace_bound, positivity_bound, .. } = run.bounds;
    let flags = MonitorFlags {
        trace: !(monitors.max_trace_drift <= trace_bound),
        positivity: !(monitors.min_eigenvalue >= -positivity_bound),
        leakage: run.truncation_dim.is_some() && monitors.max_leakage > LEAKAGE_LIMIT,
    };
    let passed = !(flags.trace || flags.positivity || flags.leakage);
    let summary = format!(
        "trace drift {:.3e}, min eigenvalue {:.3e}, leakage {:.3e}{}",
        monitors.max_trace_drift,
        monitors.min_eigenvalue,
        monitors.max_leakage,
        if flags.leakage { " (flagged)" } else { "" }
    );
    write_json(
        &run.output_dir.join("monitors.json"),
        &MonitorsFile {
            scenario: &run.label,
            method: run.method,
            grid: run.grid,
            monitors,
            truncation_dim: run.truncation_dim,
            leakage_limit: LEAKAGE_LIMIT,
            flags,
            passed,
        },
    )?;
    Ok(Outcome { passed, summary })
}

#[derive(Debug, Serialize)]
struct InvariantFile<'a> {
    scenario: &'a str,
    seed: &'a str,
    method: Method,
    grid: TimeGrid,
    #[serde(flatten)]
    report: InvariantReport,
    drift_bound: f64,
    passed: bool,
}

pub fn invariant(run: &ResolvedRun) -> Result<Outcome, CliError> {
    prepare_dir(&run.output_dir)?;
    let (state, _) = integrate_state(&run.model, &run.rho0, &run.grid, run.method)?;
    let inv = integrate_invariant(&run.model, &run.invariant_seed, SeedTime::Start, &run.grid, run.method)?;
    let series = conservation_series(&inv, &state)?;
    let spectrum = spectrum_series(&inv)?;
    let report = analyze(&inv, &state, run.bounds.strong_threshold)?;

    let grid = run.grid;
    write_rows(
        &run.output_dir.join("expectation.csv"),
        &["t".to_string(), "expectation".to_string()],
        series.iter().enumerate().map(|(k, v)| vec![format_float(grid.node(k)), format_float(*v)]),
    )?;
    let mut header = vec!["t".to_string()];
    header.extend((0..inv.dim()).map(|j| format!("eig_{j}")));
    write_rows(
        &run.output_dir.join("spectrum.csv"),
        &header,
        spectrum.eigenvalues.iter().enumerate().map(|(k, eig)| {
            std::iter::once(format_float(grid.node(k))).chain(eig.iter().map(|&v| format_float(v))).collect()
        }),
    )?;

    let passed = report.max_expectation_drift <= run.bounds.drift_bound;
    let summary = format!(
        "max expectation drift {:.3e} (bound {:.1e}), classification {}",
        report.max_expectation_drift,
        run.bounds.drift_bound,
        serde_json::to_value(report.classification).map_err(|e| CliError::Usage(e.to_string()))?
    );
    write_json(
        &run.output_dir.join("invariant_report.json"),
        &InvariantFile {
            scenario: &run.label,
            seed: &run.seed_label,
            method: run.method,
            grid,
            report,
            drift_bound: run.bounds.drift_bound,
            passed,
        },
    )?;
    Ok(Outcome { passed, summary })
}

#[derive(Debug, Serialize)]
struct ActionFile<'a> {
    scenario: &'a str,
    method: Method,
    seed: u64,
    stationarity: ActionReport,
    gauge: GaugeShiftReport,
    bounds: Bounds,
    passed: bool,
}

/// Knots of the random multiplier used by the gauge check.
const GAUGE_KNOTS: usize = 8;

pub fn action_check(run: &ResolvedRun) -> Result<Outcome, CliError> {
    let lam_final =
        run.lambda_final.as_ref().ok_or_else(|| CliError::Usage("lambda_final: required for action-check".into()))?;
    prepare_dir(&run.output_dir)?;
    let path = solution_path(&run.model, &run.rho0, lam_final, &run.grid, run.method)?;
    let stationarity = action_report(&path, &run.model)?;
    let mut rng = random::rng(run.seed);
    let lambda = random::tabulated_scalar(&mut rng, run.grid.t_start, run.grid.t_end, GAUGE_KNOTS, 1.0);
    let gauge = gauge_shift_check(&path, &run.model, &lambda)?;

    let b = run.bounds;
    let passed = stationarity.grad_rho_residual <= b.residual_bound
        && stationarity.grad_lam_residual <= b.residual_bound
        && stationarity.boundary_rho_defect <= b.boundary_bound
        && stationarity.boundary_lam_defect <= b.boundary_bound
        && gauge.defect <= b.gauge_bound
        && gauge.final_unchanged;
    let summary = format!(
        "S = {:.6e}, residuals ρ {:.3e} Λ {:.3e}, gauge defect {:.3e}",
        stationarity.action_value, stationarity.grad_rho_residual, stationarity.grad_lam_residual, gauge.defect
    );
    write_json(
        &run.output_dir.join("action_report.json"),
        &ActionFile { scenario: &run.label, method: run.method, seed: run.seed, stationarity, gauge, bounds: b, passed },
    )?;
    Ok(Outcome { passed, summary })
}

pub fn verify(opts: &VerifyOptions, out: &Path) -> Result<(Outcome, VerifyReport), CliError> {
    prepare_dir(out)?;
    let report = verify::run(opts).map_err(|e| CliError::Usage(e.to_string()))?;
    write_json(&out.join("verify_report.json"), &report)?;
    let failed: Vec<&str> = report.properties.iter().filter(|p| !p.passed).map(|p| p.name.as_str()).collect();
    let summary = if failed.is_empty() {
        format!("all {} properties passed", report.properties.len())
    } else {
        format!("failed: {}", failed.join(", "))
    };
    Ok((Outcome { passed: report.all_passed, summary }, report))
}
