// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON schema for Lindblad models.
//!
//! ```json
//! { "dim": 2,
//!   "hamiltonian": { "kind": "constant", "value": [[1,0],[0,0],[0,0],[-1,0]] },
//!   "channels": [ { "op":    { "kind": "constant", "value": [[0,0],[1,0],[0,0],[0,0]] },
//!                   "alpha": { "kind": "sinusoidal", "c0": 0.5, "c1": 0.1, "omega": 1.0 } } ] }
//! ```
//!
//! Matrices use the literal format of [`Operator`]. Operator schedules accept
//! `constant`, `tabulated` and `scaled` (`{"kind": "scaled", "scale": <scalar
//! schedule>, "op": <matrix>}`); `sinusoidal` is scalar-only.

use serde::{Deserialize, Serialize};

use super::lindblad::{Channel, LindbladModel};
use super::schedule::{OperatorSchedule, ScalarSchedule};
use crate::error::{Error, Result};
use crate::linalg::Operator;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ScalarScheduleConfig {
    Constant {
        value: f64,
    },
    Sinusoidal {
        c0: f64,
        c1: f64,
        omega: f64,
        #[serde(default)]
        phase: f64,
    },
    Tabulated {
        times: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OperatorScheduleConfig {
    Constant { value: Operator },
    Tabulated { times: Vec<f64>, values: Vec<Operator> },
    Scaled { scale: ScalarScheduleConfig, op: Operator },
    /// Present only to produce a clear error.
    Sinusoidal {},
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub op: OperatorScheduleConfig,
    pub alpha: ScalarScheduleConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub dim: usize,
    pub hamiltonian: OperatorScheduleConfig,
    #[serde(default)]
    pub channels: Vec<ChannelConfig>,
}

fn named(name: &str, err: Error) -> Error {
    match err {
        Error::InvalidSchedule { reason, .. } => Error::InvalidSchedule { name: name.to_string(), reason },
        other => other,
    }
}

impl ScalarScheduleConfig {
    pub fn build(&self, name: &str) -> Result<ScalarSchedule> {
        match self {
            Self::Constant { value } if value.is_finite() => Ok(ScalarSchedule::Constant(*value)),
            Self::Constant { .. } => {
                Err(Error::InvalidSchedule { name: name.into(), reason: "value must be finite".into() })
            }
            Self::Sinusoidal { c0, c1, omega, phase } => {
                ScalarSchedule::sinusoidal(*c0, *c1, *omega, *phase).map_err(|e| named(name, e))
            }
            Self::Tabulated { times, values } => {
                ScalarSchedule::tabulated(times.clone(), values.clone()).map_err(|e| named(name, e))
            }
        }
    }
}

impl OperatorScheduleConfig {
    pub fn build(&self, name: &str) -> Result<OperatorSchedule> {
        match self {
            Self::Constant { value } => Ok(OperatorSchedule::Constant(value.clone())),
            Self::Tabulated { times, values } => {
                OperatorSchedule::tabulated(times.clone(), values.clone()).map_err(|e| named(name, e))
            }
            Self::Scaled { scale, op } => Ok(OperatorSchedule::scaled(scale.build(name)?, op.clone())),
            Self::Sinusoidal {} => Err(Error::InvalidSchedule {
                name: name.into(),
                reason: "operator-valued sinusoidal schedules are not supported; use `scaled` or `tabulated`".into(),
            }),
        }
    }
}

impl ModelConfig {
    pub fn build(&self) -> Result<LindbladModel> {
        let hamiltonian = self.hamiltonian.build("hamiltonian")?;
        let channels = self
            .channels
            .iter()
            .enumerate()
            .map(|(n, ch)| {
                Ok(Channel::new(ch.op.build(&format!("channels[{n}].op"))?, ch.alpha.build(&format!("channels[{n}].alpha"))?))
            })
            .collect::<Result<Vec<_>>>()?;
        LindbladModel::new(self.dim, hamiltonian, channels)
    }
}

impl LindbladModel {
    /// Parses a model from the JSON config schema.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ModelConfig = serde_json::from_str(text).map_err(|e| Error::Format(format!("model config: {e}")))?;
        config.build()
    }
}
