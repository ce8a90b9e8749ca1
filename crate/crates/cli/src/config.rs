// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration files and their resolution into concrete inputs.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};
use weakinv::dynamics::{Method, TimeGrid};
use weakinv::invariant::DEFAULT_STRONG_THRESHOLD;
use weakinv::linalg::pauli;
use weakinv::model::{LindbladModel, ModelConfig};
use weakinv::scenarios::{self, ScenarioParams};
use weakinv::Operator;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScenarioRef {
    Named(String),
    Inline(Box<ModelConfig>),
}

// Hand-written so that errors inside an inline model keep their detail.
impl<'de> Deserialize<'de> for ScenarioRef {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ScenarioRef;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a scenario name or an inline model object")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ScenarioRef, E> {
                Ok(ScenarioRef::Named(v.to_string()))
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<ScenarioRef, A::Error> {
                ModelConfig::deserialize(de::value::MapAccessDeserializer::new(map))
                    .map(|m| ScenarioRef::Inline(Box::new(m)))
            }
        }
        de.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedRef {
    /// `"sz"`, `"hamiltonian"` or `"identity"`.
    Named(String),
    Literal(Operator),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub n_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// Largest accepted `max_k |⟨I⟩(t_k) − ⟨I⟩(t_0)|`.
    pub drift_bound: f64,
    /// Largest accepted interior gradient residual of the action.
    pub residual_bound: f64,
    /// Largest accepted boundary pairing defect of the action.
    pub boundary_bound: f64,
    pub gauge_bound: f64,
    pub strong_threshold: f64,
    pub trace_bound: f64,
    pub positivity_bound: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            drift_bound: 1e-8,
            residual_bound: 1e-4,
            boundary_bound: 1e-8,
            gauge_bound: 1e-10,
            strong_threshold: DEFAULT_STRONG_THRESHOLD,
            trace_bound: 1e-10,
            positivity_bound: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioRef,
    #[serde(default)]
    pub params: ScenarioParams,
    pub rho0: Option<Operator>,
    pub grid: Option<GridConfig>,
    pub method: Option<Method>,
    pub invariant_seed: Option<SeedRef>,
    pub lambda_final: Option<Operator>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub bounds: Bounds,
}

impl RunConfig {
    pub fn named(scenario: &str) -> Self {
        RunConfig {
            scenario: ScenarioRef::Named(scenario.to_string()),
            params: ScenarioParams::default(),
            rho0: None,
            grid: None,
            method: None,
            invariant_seed: None,
            lambda_final: None,
            output_dir: None,
            seed: None,
            bounds: Bounds::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                CliError::Usage(format!("config: {}", e.inner()))
            } else {
                CliError::Usage(format!("config field `{path}`: {}", e.inner()))
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub steps: Option<usize>,
    pub method: Option<Method>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// A configuration with every default filled in and every matrix checked.
#[derive(Debug, Clone)]
pub struct ResolvedRun {
    pub label: String,
    pub model: LindbladModel,
    pub rho0: Operator,
    pub grid: TimeGrid,
    pub method: Method,
    pub invariant_seed: Operator,
    pub seed_label: String,
    pub lambda_final: Option<Operator>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub bounds: Bounds,
    pub truncation_dim: Option<usize>,
}

fn usage(field: &'static str) -> impl Fn(weakinv::Error) -> CliError {
    move |e| CliError::Usage(format!("{field}: {e}"))
}

fn check_dim(field: &str, op: &Operator, dim: usize) -> Result<(), CliError> {
    if op.dim() != dim {
        return Err(CliError::Usage(format!("{field}: expected a {dim}x{dim} matrix, got {0}x{0}", op.dim())));
    }
    Ok(())
}

fn check_hermitian(field: &str, op: &Operator) -> Result<(), CliError> {
    op.ensure_hermitian().map_err(|e| CliError::Usage(format!("{field}: {e}")))
}

impl ResolvedRun {
    pub fn resolve(cfg: &RunConfig, ov: &Overrides) -> Result<Self, CliError> {
        let (label, model, default_rho0, default_seed, default_grid, truncation_dim) = match &cfg.scenario {
            ScenarioRef::Named(name) => {
                let spec = scenarios::by_name(name, &cfg.params).map_err(usage("scenario"))?;
                (
                    spec.name,
                    spec.model,
                    Some(spec.default_rho0),
                    Some(spec.default_invariant_seed),
                    spec.default_grid,
                    spec.truncation_dim,
                )
            }
            ScenarioRef::Inline(model_cfg) => {
                if cfg.params != ScenarioParams::default() {
                    return Err(CliError::Usage("params: only valid with a named scenario".into()));
                }
                let model = model_cfg.build().map_err(usage("scenario"))?;
                ("inline".to_string(), model, None, None, TimeGrid { t_start: 0.0, t_end: 1.0, n_steps: 1000 }, None)
            }
        };
        let dim = model.dim();

        let mut grid = match cfg.grid {
            Some(g) => TimeGrid { t_start: g.t_start, t_end: g.t_end, n_steps: g.n_steps },
            None => default_grid,
        };
        if let Some(n) = ov.steps {
            grid.n_steps = n;
        }
        grid.check().map_err(|e| CliError::Usage(e.to_string()))?;

        let rho0 = match (&cfg.rho0, default_rho0) {
            (Some(r), _) => r.clone(),
            (None, Some(r)) => r,
            (None, None) => return Err(CliError::Usage("rho0: required for an inline scenario".into())),
        };
        check_dim("rho0", &rho0, dim)?;
        check_hermitian("rho0", &rho0)?;

        let (invariant_seed, seed_label) = match &cfg.invariant_seed {
            None => match default_seed {
                Some(s) => (s, "default".to_string()),
                None => (Operator::identity(dim), "identity".to_string()),
            },
            Some(SeedRef::Named(name)) => {
                let op = match name.as_str() {
                    "sz" if dim == 2 => pauli::sigma_z(),
                    "sz" => return Err(CliError::Usage(format!("invariant_seed: \"sz\" needs dim 2, model has {dim}"))),
                    "identity" => Operator::identity(dim),
                    "hamiltonian" => model.snapshot(grid.t_start).map_err(usage("invariant_seed"))?.h,
                    other => {
                        return Err(CliError::Usage(format!(
                            "invariant_seed: unknown name `{other}` (expected sz, hamiltonian or identity)"
                        )))
                    }
                };
                (op, name.clone())
            }
            Some(SeedRef::Literal(op)) => (op.clone(), "literal".to_string()),
        };
        check_dim("invariant_seed", &invariant_seed, dim)?;
        check_hermitian("invariant_seed", &invariant_seed)?;

        if let Some(l) = &cfg.lambda_final {
            check_dim("lambda_final", l, dim)?;
            check_hermitian("lambda_final", l)?;
        }

        Ok(ResolvedRun {
            label,
            model,
            rho0,
            grid,
            method: ov.method.or(cfg.method).unwrap_or_default(),
            invariant_seed,
            seed_label,
            lambda_final: cfg.lambda_final.clone(),
            output_dir: ov.out.clone().or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from("out")),
            seed: ov.seed.or(cfg.seed).unwrap_or(0),
            bounds: cfg.bounds,
            truncation_dim,
        })
    }
}
