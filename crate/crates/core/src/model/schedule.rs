// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};

/// Piecewise-linear table with strictly increasing knots. Queries outside
/// `[times[0], times[last]]` are errors.
#[derive(Debug, Clone, PartialEq)]
pub struct Table<T> {
    times: Vec<f64>,
    values: Vec<T>,
}

impl<T> Table<T> {
    pub fn new(times: Vec<f64>, values: Vec<T>) -> std::result::Result<Self, String> {
        if times.is_empty() {
            return Err("table needs at least one point".into());
        }
        if times.len() != values.len() {
            return Err(format!("{} times but {} values", times.len(), values.len()));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err("table times must be finite".into());
        }
        if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
            return Err(format!("table times must be strictly increasing ({} then {})", w[0], w[1]));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn range(&self) -> (f64, f64) {
        (self.times[0], *self.times.last().unwrap())
    }

    /// Locates `t`: returns `(segment index, weight)` with the query equal to
    /// `(1 − w)·times[i] + w·times[i + 1]`.
    fn locate(&self, name: &str, t: f64) -> Result<(usize, f64)> {
        let (lo, hi) = self.range();
        // accept one-ulp-scale overshoot from grid arithmetic
        let slack = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(hi - lo);
        if !(t >= lo - slack && t <= hi + slack) {
            return Err(Error::ScheduleOutOfRange { name: name.to_string(), t, lo, hi });
        }
        if self.times.len() == 1 {
            return Ok((0, 0.0));
        }
        let t = t.clamp(lo, hi);
        let i = self.times.partition_point(|&x| x <= t).saturating_sub(1).min(self.times.len() - 2);
        let w = (t - self.times[i]) / (self.times[i + 1] - self.times[i]);
        Ok((i, w))
    }
}

impl Table<f64> {
    pub fn eval(&self, name: &str, t: f64) -> Result<f64> {
        let (i, w) = self.locate(name, t)?;
        if w == 0.0 {
            return Ok(self.values[i]);
        }
        Ok(self.values[i] + w * (self.values[i + 1] - self.values[i]))
    }
}

impl Table<Operator> {
    pub fn eval(&self, name: &str, t: f64) -> Result<Operator> {
        let (i, w) = self.locate(name, t)?;
        if w == 0.0 {
            return Ok(self.values[i].clone());
        }
        let mut out = self.values[i].scale_real(1.0 - w);
        out.axpy(C64::new(w, 0.0), &self.values[i + 1]);
        Ok(out)
    }
}

/// Real-valued schedule.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarSchedule {
    Constant(f64),
    /// `c0 + c1·sin(omega·t + phase)`
    Sinusoidal { c0: f64, c1: f64, omega: f64, phase: f64 },
    Tabulated(Table<f64>),
}

impl ScalarSchedule {
    pub fn constant(value: f64) -> Self {
        Self::Constant(value)
    }

    pub fn sinusoidal(c0: f64, c1: f64, omega: f64, phase: f64) -> Result<Self> {
        if ![c0, c1, omega, phase].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidSchedule {
                name: "sinusoidal".into(),
                reason: "parameters must be finite".into(),
            });
        }
        Ok(Self::Sinusoidal { c0, c1, omega, phase })
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSchedule { name: "tabulated".into(), reason: "values must be finite".into() });
        }
        Table::new(times, values)
            .map(Self::Tabulated)
            .map_err(|reason| Error::InvalidSchedule { name: "tabulated".into(), reason })
    }

    pub fn eval(&self, name: &str, t: f64) -> Result<f64> {
        match self {
            Self::Constant(v) => Ok(*v),
            Self::Sinusoidal { c0, c1, omega, phase } => Ok(c0 + c1 * (omega * t + phase).sin()),
            Self::Tabulated(table) => table.eval(name, t),
        }
    }

    /// Time interval on which the schedule is defined, if bounded.
    pub fn domain(&self) -> Option<(f64, f64)> {
        match self {
            Self::Tabulated(table) => Some(table.range()),
            _ => None,
        }
    }
}

/// Operator-valued schedule.
///
/// Entrywise sinusoidal operators are not representable; a time-dependent
/// operator is either tabulated or a fixed operator times a scalar schedule.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSchedule {
    Constant(Operator),
    Tabulated(Table<Operator>),
    /// `scale(t) · op`
    Scaled { scale: ScalarSchedule, op: Operator },
}

impl OperatorSchedule {
    pub fn constant(op: Operator) -> Self {
        Self::Constant(op)
    }

    pub fn scaled(scale: ScalarSchedule, op: Operator) -> Self {
        Self::Scaled { scale, op }
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<Operator>) -> Result<Self> {
        if let Some(first) = values.first() {
            for v in &values {
                first.check_same_dim(v)?;
            }
        }
        Table::new(times, values)
            .map(Self::Tabulated)
            .map_err(|reason| Error::InvalidSchedule { name: "tabulated".into(), reason })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Constant(op) | Self::Scaled { op, .. } => op.dim(),
            Self::Tabulated(table) => table.values()[0].dim(),
        }
    }

    pub fn eval(&self, name: &str, t: f64) -> Result<Operator> {
        match self {
            Self::Constant(op) => Ok(op.clone()),
            Self::Tabulated(table) => table.eval(name, t),
            Self::Scaled { scale, op } => Ok(op.scale_real(scale.eval(name, t)?)),
        }
    }

    pub fn domain(&self) -> Option<(f64, f64)> {
        match self {
            Self::Constant(_) => None,
            Self::Tabulated(table) => Some(table.range()),
            Self::Scaled { scale, .. } => scale.domain(),
        }
    }
}
