// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Operator;

/// Uniform grid `t_k = t_start + k·Δt`, `k = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_steps: usize) -> Result<Self> {
        let grid = Self { t_start, t_end, n_steps };
        grid.check()?;
        Ok(grid)
    }

    pub fn check(&self) -> Result<()> {
        if self.n_steps < 1 {
            return Err(Error::InvalidGrid("grid.n_steps must be ≥ 1".into()));
        }
        if !(self.t_start.is_finite() && self.t_end.is_finite()) {
            return Err(Error::InvalidGrid("grid endpoints must be finite".into()));
        }
        if !(self.t_end > self.t_start) {
            return Err(Error::InvalidGrid(format!(
                "grid.t_end ({}) must exceed grid.t_start ({})",
                self.t_end, self.t_start
            )));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / self.n_steps as f64
    }

    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node time; the last node is exactly `t_end`.
    pub fn node(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.t_end
        } else {
            self.t_start + k as f64 * self.dt()
        }
    }

    /// Midpoint of step `k` (between nodes `k` and `k + 1`).
    pub fn midpoint(&self, k: usize) -> f64 {
        0.5 * (self.node(k) + self.node(k + 1))
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n_steps).map(|k| self.node(k)).collect()
    }

    /// Every time at which an integrator on this grid samples a schedule.
    pub fn sample_times(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.n_steps + 1);
        for k in 0..self.n_steps {
            out.push(self.node(k));
            out.push(self.midpoint(k));
        }
        out.push(self.t_end);
        out
    }

    /// Same interval with `factor` times as many steps.
    pub fn refined(&self, factor: usize) -> Self {
        Self { n_steps: self.n_steps * factor, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryKind {
    State,
    Invariant,
}

/// Operator samples at every node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub grid: TimeGrid,
    pub samples: Vec<Operator>,
    pub kind: TrajectoryKind,
}

impl Trajectory {
    pub fn new(grid: TimeGrid, samples: Vec<Operator>, kind: TrajectoryKind) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} samples for {} nodes", samples.len(), grid.len())));
        }
        let dim = samples[0].dim();
        if let Some(bad) = samples.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { grid, samples, kind })
    }

    pub fn dim(&self) -> usize {
        self.samples[0].dim()
    }

    pub fn first(&self) -> &Operator {
        &self.samples[0]
    }

    pub fn last(&self) -> &Operator {
        self.samples.last().unwrap()
    }

    /// Largest entrywise difference between two trajectories on one grid.
    pub fn max_abs_diff(&self, other: &Trajectory) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("trajectories use different grids".into()));
        }
        self.samples[0].check_same_dim(&other.samples[0])?;
        Ok(self.samples.iter().zip(&other.samples).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max))
    }
}
