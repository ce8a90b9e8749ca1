// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Example systems: a damped qubit, a dephased qubit and a damped harmonic
//! oscillator on a truncated Fock space.

use serde::{Deserialize, Serialize};

use crate::dynamics::{MonitorReport, TimeGrid};
use crate::error::{Error, Result};
use crate::linalg::{pauli, Operator, C64};
use crate::model::{Channel, LindbladModel, OperatorSchedule, ScalarSchedule};

/// Population of the top Fock level above which a run is flagged.
pub const LEAKAGE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub name: String,
    pub model: LindbladModel,
    pub default_rho0: Operator,
    pub default_invariant_seed: Operator,
    pub default_grid: TimeGrid,
    pub truncation_dim: Option<usize>,
}

impl ScenarioSpec {
    /// True when the scenario is truncated and the run leaked more than
    /// [`LEAKAGE_LIMIT`] into the top level.
    pub fn leakage_flagged(&self, monitors: &MonitorReport) -> bool {
        self.truncation_dim.is_some() && monitors.max_leakage > LEAKAGE_LIMIT
    }
}

fn nonnegative(name: &str, gamma: f64) -> Result<()> {
    if gamma >= 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be a finite nonnegative number, got {gamma}")))
    }
}

fn excited_qubit() -> Operator {
    Operator::diag_real(&[0.0, 1.0])
}

/// `H = ω·|1⟩⟨1|`, one channel `(σ₋, γ)`; starts in `|1⟩⟨1|` with seed `σz`.
pub fn amplitude_damping_qubit(omega: f64, gamma: f64) -> Result<ScenarioSpec> {
    nonnegative("gamma", gamma)?;
    let model = LindbladModel::constant(Operator::diag_real(&[0.0, omega]), vec![(pauli::sigma_minus(), gamma)])?;
    Ok(ScenarioSpec {
        name: "amp-damp".into(),
        model,
        default_rho0: excited_qubit(),
        default_invariant_seed: pauli::sigma_z(),
        default_grid: TimeGrid::new(0.0, 5.0, 5000)?,
        truncation_dim: None,
    })
}

/// `H = (ω/2)·σz`, one channel `(σz, γ)`; starts in `|+⟩⟨+|` with seed `σx`.
///
/// Populations are conserved and coherences decay as `e^{−4γt}`.
pub fn dephasing_qubit(omega: f64, gamma: f64) -> Result<ScenarioSpec> {
    nonnegative("gamma", gamma)?;
    let model = LindbladModel::constant(pauli::sigma_z().scale_real(0.5 * omega), vec![(pauli::sigma_z(), gamma)])?;
    Ok(ScenarioSpec {
        name: "dephase".into(),
        model,
        default_rho0: Operator::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])?,
        default_invariant_seed: pauli::sigma_x(),
        default_grid: TimeGrid::new(0.0, 5.0, 5000)?,
        truncation_dim: None,
    })
}

/// Annihilation operator `a|n⟩ = √n |n−1⟩` on the lowest `n` Fock states.
pub fn ladder(n: usize) -> Operator {
    Operator::from_fn(n, |r, c| if c == r + 1 { C64::new((c as f64).sqrt(), 0.0) } else { C64::new(0.0, 0.0) })
}

/// `a†a` on the lowest `n` Fock states.
pub fn number(n: usize) -> Operator {
    Operator::diag_real(&(0..n).map(|k| k as f64).collect::<Vec<_>>())
}

/// Fock projector `|k⟩⟨k|`.
pub fn fock_projector(n: usize, k: usize) -> Operator {
    let mut p = Operator::zeros(n);
    p[(k, k)] = C64::new(1.0, 0.0);
    p
}

/// Truncated coherent state with amplitude 1: weights ∝ (1, 1, 1/√2, 1/√6)
/// on `|0⟩..|3⟩`, normalized (fewer components when `n < 4`).
pub fn coherent_like_state(n: usize) -> Operator {
    let amps = [1.0, 1.0, 1.0 / 2f64.sqrt(), 1.0 / 6f64.sqrt()];
    let mut v = vec![C64::new(0.0, 0.0); n];
    for (slot, a) in v.iter_mut().zip(amps) {
        *slot = C64::new(a, 0.0);
    }
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Operator::outer(&v.iter().map(|z| z / norm).collect::<Vec<_>>())
}

/// `H(t) = ω(t)·(a†a + ½)`, one channel `(a, γ(t))` on `n_trunc` Fock levels.
///
/// Defaults: the coherent-like state, seed `H(0)`, grid `[0, 3]` with 3000
/// steps. The leakage monitor watches `|n_trunc − 1⟩`.
pub fn damped_oscillator(
    n_trunc: usize,
    omega_schedule: ScalarSchedule,
    gamma_schedule: ScalarSchedule,
) -> Result<ScenarioSpec> {
    if n_trunc < 2 {
        return Err(Error::InvalidParameter(format!("n_trunc must be at least 2, got {n_trunc}")));
    }
    let h_shape = number(n_trunc).shifted(C64::new(0.5, 0.0));
    let model = LindbladModel::new(
        n_trunc,
        OperatorSchedule::scaled(omega_schedule, h_shape),
        vec![Channel::new(OperatorSchedule::Constant(ladder(n_trunc)), gamma_schedule)],
    )?;
    let grid = TimeGrid::new(0.0, 3.0, 3000)?;
    let report = model.validate(&grid.sample_times());
    if !report.is_valid() {
        return Err(Error::InvalidParameter(format!("damped oscillator schedules: {report}")));
    }
    let seed = model.snapshot(grid.t_start)?.h;
    Ok(ScenarioSpec {
        name: "damped-ho".into(),
        model,
        default_rho0: coherent_like_state(n_trunc),
        default_invariant_seed: seed,
        default_grid: grid,
        truncation_dim: Some(n_trunc),
    })
}

/// Parameters accepted by [`by_name`]; unset fields take scenario defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioParams {
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    /// Amplitude of the `sin t` modulation of ω (damped oscillator only).
    pub omega_mod: Option<f64>,
    pub n_trunc: Option<usize>,
}

pub const SCENARIO_NAMES: [&str; 3] = ["amp-damp", "dephase", "damped-ho"];

/// Builds a named scenario: `amp-damp` (ω = 1, γ = 0.5), `dephase`
/// (ω = 1, γ = 0.25) or `damped-ho` (20 levels, ω(t) = 1 + 0.1·sin t, γ = 0.1).
pub fn by_name(name: &str, params: &ScenarioParams) -> Result<ScenarioSpec> {
    match name {
        "amp-damp" => amplitude_damping_qubit(params.omega.unwrap_or(1.0), params.gamma.unwrap_or(0.5)),
        "dephase" => dephasing_qubit(params.omega.unwrap_or(1.0), params.gamma.unwrap_or(0.25)),
        "damped-ho" => {
            let gamma = params.gamma.unwrap_or(0.1);
            nonnegative("gamma", gamma)?;
            damped_oscillator(
                params.n_trunc.unwrap_or(20),
                ScalarSchedule::sinusoidal(params.omega.unwrap_or(1.0), params.omega_mod.unwrap_or(0.1), 1.0, 0.0)?,
                ScalarSchedule::Constant(gamma),
            )
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown scenario `{other}` (expected one of {})",
            SCENARIO_NAMES.join(", ")
        ))),
    }
}
