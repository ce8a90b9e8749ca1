// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! `weakinv` command-line tool.
//!
//! Exit status: 0 on success, 1 on usage or configuration errors, 2 when a
//! monitor, bound or verification property fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weakinv::dynamics::Method;
use weakinv::verify::VerifyOptions;

use crate::commands::Outcome;
use crate::config::{Overrides, ResolvedRun, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
}

impl From<weakinv::Error> for CliError {
    fn from(e: weakinv::Error) -> Self {
        match e {
            weakinv::Error::Blowup { .. } | weakinv::Error::NonFinite { .. } => CliError::Check(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Check(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "weakinv", version, about = "Lindblad dynamics, weak invariants and action checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the state and write state.csv and monitors.json.
    Simulate(RunArgs),
    /// Propagate an invariant; write expectation.csv, spectrum.csv and invariant_report.json.
    Invariant(RunArgs),
    /// Check stationarity and gauge behaviour of the discrete action; write action_report.json.
    ActionCheck(RunArgs),
    /// Run the randomized property suites; write verify_report.json.
    Verify(VerifyArgs),
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Run configuration (JSON). Repeat to run several configurations in parallel.
    #[arg(long = "config", value_name = "PATH")]
    configs: Vec<PathBuf>,
    /// Named scenario with default settings, used when no config is given.
    #[arg(long, conflicts_with = "configs")]
    scenario: Option<String>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    steps: Option<usize>,
    #[arg(long, value_parser = parse_method, value_name = "rk4|midpoint")]
    method: Option<Method>,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Substitute a wrong adjoint (negative control).
    #[arg(long, hide = true)]
    break_adjoint: bool,
}

type Job = fn(&ResolvedRun) -> Result<Outcome, CliError>;

struct Planned {
    label: String,
    config: RunConfig,
    overrides: Overrides,
}

fn plan(args: &RunArgs) -> Result<Vec<Planned>, CliError> {
    let base = Overrides { steps: args.steps, method: args.method, seed: args.seed, out: args.out.clone() };
    if args.configs.is_empty() {
        let name = args
            .scenario
            .as_deref()
            .ok_or_else(|| CliError::Usage("either --config PATH or --scenario NAME is required".into()))?;
        return Ok(vec![Planned { label: name.to_string(), config: RunConfig::named(name), overrides: base }]);
    }
    let many = args.configs.len() > 1;
    args.configs
        .iter()
        .map(|path| {
            let config = RunConfig::load(path)?;
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let mut overrides = base.clone();
            // Parallel jobs must not share an output directory.
            if many && (overrides.out.is_some() || config.output_dir.is_none()) {
                let root = overrides.out.clone().unwrap_or_else(|| PathBuf::from("out"));
                overrides.out = Some(root.join(&stem));
            }
            Ok(Planned { label: path.display().to_string(), config, overrides })
        })
        .collect()
}

fn run_one(planned: &Planned, job: Job) -> Result<Outcome, CliError> {
    let run = ResolvedRun::resolve(&planned.config, &planned.overrides)?;
    job(&run)
}

fn report(label: &str, result: &Result<Outcome, CliError>) -> u8 {
    match result {
        Ok(o) if o.passed => {
            println!("{label}: ok: {}", o.summary);
            0
        }
        Ok(o) => {
            println!("{label}: FAILED: {}", o.summary);
            2
        }
        Err(e) => {
            eprintln!("{label}: error: {e}");
            e.code()
        }
    }
}

fn run_jobs(args: &RunArgs, job: Job) -> u8 {
    let planned = match plan(args) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return e.code();
        }
    };
    if planned.len() == 1 {
        return report(&planned[0].label, &run_one(&planned[0], job));
    }
    let results: Vec<Result<Outcome, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = planned.iter().map(|p| scope.spawn(move || run_one(p, job))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Usage("worker panicked".into()))))
            .collect()
    });
    planned.iter().zip(&results).map(|(p, r)| report(&p.label, r)).max().unwrap_or(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Simulate(args) => run_jobs(&args, commands::simulate),
        Command::Invariant(args) => run_jobs(&args, commands::invariant),
        Command::ActionCheck(args) => run_jobs(&args, commands::action_check),
        Command::Verify(args) => {
            let opts = VerifyOptions { seed: args.seed, trials: args.trials, break_adjoint: args.break_adjoint };
            report("verify", &commands::verify(&opts, &args.out).map(|(o, _)| o))
        }
    };
    ExitCode::from(code)
}
