// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::Serialize;

use super::schedule::{OperatorSchedule, ScalarSchedule};
use crate::error::{Error, Result};
use crate::linalg::Operator;

/// Relative tolerance for the Hamiltonian Hermiticity check.
pub const HAMILTONIAN_HERMITIAN_RTOL: f64 = 1e-10;

/// One dissipative channel: Lindblad operator and its rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub op: OperatorSchedule,
    pub alpha: ScalarSchedule,
}

impl Channel {
    pub fn new(op: OperatorSchedule, alpha: ScalarSchedule) -> Self {
        Self { op, alpha }
    }

    pub fn constant(op: Operator, alpha: f64) -> Self {
        Self { op: OperatorSchedule::Constant(op), alpha: ScalarSchedule::Constant(alpha) }
    }
}

/// Time-dependent Lindblad model `(H(t), {L_n(t)}, {α_n(t)})`.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladModel {
    dim: usize,
    hamiltonian: OperatorSchedule,
    channels: Vec<Channel>,
}

/// Cached channel data at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotChannel {
    pub l: Operator,
    pub l_dag: Operator,
    pub l_dag_l: Operator,
    pub alpha: f64,
}

/// A model evaluated at time `t`, with `L†` and `L†L` precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSnapshot {
    pub t: f64,
    pub h: Operator,
    pub channels: Vec<SnapshotChannel>,
}

impl ModelSnapshot {
    /// Builds a snapshot from already-evaluated operators.
    pub fn from_parts(t: f64, h: Operator, channels: impl IntoIterator<Item = (Operator, f64)>) -> Result<Self> {
        let channels = channels
            .into_iter()
            .map(|(l, alpha)| {
                h.check_same_dim(&l)?;
                let l_dag = l.dagger();
                let l_dag_l = l_dag.matmul(&l);
                Ok(SnapshotChannel { l, l_dag, l_dag_l, alpha })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { t, h, channels })
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Magnitude of the generator, `maxabs(H) + Σ α_n·maxabs(L_n†L_n)`.
    pub fn generator_scale(&self) -> f64 {
        self.h.max_abs() + self.channels.iter().map(|c| c.alpha.abs() * c.l_dag_l.max_abs()).sum::<f64>()
    }
}

impl LindbladModel {
    pub fn new(dim: usize, hamiltonian: OperatorSchedule, channels: Vec<Channel>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModel("dim must be at least 1".into()));
        }
        if hamiltonian.dim() != dim {
            return Err(Error::InvalidModel(format!(
                "hamiltonian has dimension {}, model dimension is {dim}",
                hamiltonian.dim()
            )));
        }
        for (n, ch) in channels.iter().enumerate() {
            if ch.op.dim() != dim {
                return Err(Error::InvalidModel(format!(
                    "channels[{n}].op has dimension {}, model dimension is {dim}",
                    ch.op.dim()
                )));
            }
        }
        Ok(Self { dim, hamiltonian, channels })
    }

    /// Time-independent model.
    pub fn constant(h: Operator, channels: Vec<(Operator, f64)>) -> Result<Self> {
        let dim = h.dim();
        Self::new(
            dim,
            OperatorSchedule::Constant(h),
            channels.into_iter().map(|(l, a)| Channel::constant(l, a)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hamiltonian(&self) -> &OperatorSchedule {
        &self.hamiltonian
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    /// Same model with every rate replaced by `alpha(n)`.
    pub fn with_rates(&self, mut alpha: impl FnMut(usize) -> ScalarSchedule) -> Self {
        let channels = self
            .channels
            .iter()
            .enumerate()
            .map(|(n, ch)| Channel { op: ch.op.clone(), alpha: alpha(n) })
            .collect();
        Self { dim: self.dim, hamiltonian: self.hamiltonian.clone(), channels }
    }

    /// Evaluates every schedule at `t`.
    pub fn snapshot(&self, t: f64) -> Result<ModelSnapshot> {
        let h = self.hamiltonian.eval("hamiltonian", t)?;
        let channels = self
            .channels
            .iter()
            .enumerate()
            .map(|(n, ch)| {
                let l = ch.op.eval(&format!("channels[{n}].op"), t)?;
                let alpha = ch.alpha.eval(&format!("channels[{n}].alpha"), t)?;
                Ok((l, alpha))
            })
            .collect::<Result<Vec<_>>>()?;
        ModelSnapshot::from_parts(t, h, channels)
    }

    /// Checks Hermiticity of `H(t)` and nonnegativity of every `α_n(t)` at
    /// the given times. Never fails; problems are collected in the report.
    pub fn validate(&self, sample_times: &[f64]) -> ValidationReport {
        let mut issues = Vec::new();
        for &t in sample_times {
            let snap = match self.snapshot(t) {
                Ok(s) => s,
                Err(e) => {
                    issues.push(ValidationIssue::Evaluation { t, message: e.to_string() });
                    continue;
                }
            };
            let defect = snap.h.hermiticity_defect();
            if defect > HAMILTONIAN_HERMITIAN_RTOL * snap.h.max_abs() {
                issues.push(ValidationIssue::HamiltonianNotHermitian { t, defect });
            }
            for (channel, ch) in snap.channels.iter().enumerate() {
                if !(ch.alpha >= 0.0) {
                    issues.push(ValidationIssue::NegativeRate { t, channel, alpha: ch.alpha });
                }
            }
            if !snap.h.is_finite() || snap.channels.iter().any(|c| !c.l.is_finite()) {
                issues.push(ValidationIssue::Evaluation { t, message: "non-finite operator entries".into() });
            }
        }
        ValidationReport { issues }
    }

    pub fn ensure_valid(&self, sample_times: &[f64]) -> Result<()> {
        let report = self.validate(sample_times);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidModel(report.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "issue", rename_all = "snake_case")]
pub enum ValidationIssue {
    HamiltonianNotHermitian { t: f64, defect: f64 },
    NegativeRate { t: f64, channel: usize, alpha: f64 },
    Evaluation { t: f64, message: String },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HamiltonianNotHermitian { t, defect } => {
                write!(f, "hamiltonian not Hermitian at t = {t} (defect {defect:e})")
            }
            Self::NegativeRate { t, channel, alpha } => {
                write!(f, "channels[{channel}].alpha = {alpha} is negative at t = {t}")
            }
            Self::Evaluation { t, message } => write!(f, "at t = {t}: {message}"),
        }
    }
}

/// Outcome of [`LindbladModel::validate`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.issues.iter().take(5).map(|i| i.to_string()).collect();
        write!(f, "{}", shown.join("; "))?;
        if self.issues.len() > shown.len() {
            write!(f, " (+{} more)", self.issues.len() - shown.len())?;
        }
        Ok(())
    }
}
