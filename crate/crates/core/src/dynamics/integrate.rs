// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::grid::{TimeGrid, Trajectory, TrajectoryKind};
use crate::error::{Error, Result};
use crate::linalg::{expectation, hermitian_eigenvalues, Operator, C64, I};
use crate::model::{LindbladModel, ModelSnapshot};
use crate::superop::{apply_adjoint, apply_liouvillian, build_liouvillian_matrix};

/// Invariant magnitudes above this abort the integration.
pub const INVARIANT_CAP: f64 = 1e12;

/// Tolerance on `|tr ρ₀ − 1|` and on negative eigenvalues of `ρ₀`.
pub const STATE_PRECONDITION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Rk4,
    Midpoint,
}

impl Method {
    pub fn order(self) -> u32 {
        match self {
            Self::Rk4 => 4,
            Self::Midpoint => 2,
        }
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rk4" => Ok(Self::Rk4),
            "midpoint" => Ok(Self::Midpoint),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}` (expected rk4 or midpoint)"))),
        }
    }
}

/// Where an invariant is seeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedTime {
    Start,
    End,
}

/// Numerical health of a state trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonitorReport {
    /// `max_k |tr ρ_k − tr ρ_0|`
    pub max_trace_drift: f64,
    /// Largest Hermiticity defect of a raw step before re-symmetrization.
    pub max_hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    /// Largest population of the highest basis level; meaningful for
    /// truncated Fock spaces.
    pub max_leakage: f64,
}

/// Right-hand side `ẋ = f(snapshot, x)`.
type Rhs<'a> = dyn Fn(&ModelSnapshot, &Operator) -> Result<Operator> + 'a;

fn state_rhs(s: &ModelSnapshot, rho: &Operator) -> Result<Operator> {
    Ok(apply_liouvillian(s, rho)?.scale(-I))
}

fn invariant_rhs(s: &ModelSnapshot, a: &Operator) -> Result<Operator> {
    Ok(apply_adjoint(s, a)?.scale(I))
}

fn combo(y: &Operator, h: f64, k: &Operator) -> Operator {
    let mut out = y.clone();
    out.axpy(C64::new(h, 0.0), k);
    out
}

/// One step from `t0` to `t1 = t0 + h` (h may be negative).
fn step(
    method: Method,
    rhs: &Rhs<'_>,
    s0: &ModelSnapshot,
    sm: &ModelSnapshot,
    s1: &ModelSnapshot,
    y: &Operator,
    h: f64,
) -> Result<Operator> {
    match method {
        Method::Rk4 => {
            let k1 = rhs(s0, y)?;
            let k2 = rhs(sm, &combo(y, 0.5 * h, &k1))?;
            let k3 = rhs(sm, &combo(y, 0.5 * h, &k2))?;
            let k4 = rhs(s1, &combo(y, h, &k3))?;
            let mut out = y.clone();
            out.axpy(C64::new(h / 6.0, 0.0), &k1);
            out.axpy(C64::new(h / 3.0, 0.0), &k2);
            out.axpy(C64::new(h / 3.0, 0.0), &k3);
            out.axpy(C64::new(h / 6.0, 0.0), &k4);
            Ok(out)
        }
        Method::Midpoint => {
            let k1 = rhs(s0, y)?;
            let k2 = rhs(sm, &combo(y, 0.5 * h, &k1))?;
            Ok(combo(y, h, &k2))
        }
    }
}

struct StepOutcome {
    hermiticity_defect: f64,
}

/// Propagates `x0` across the grid in either direction, re-symmetrizing
/// after each step. Returns samples in node order.
#[allow(clippy::too_many_arguments)]
fn propagate(
    model: &LindbladModel,
    x0: &Operator,
    grid: &TimeGrid,
    method: Method,
    direction: SeedTime,
    rhs: &Rhs<'_>,
    cap: Option<f64>,
    mut on_step: impl FnMut(usize, &Operator, StepOutcome) -> Result<()>,
) -> Result<Vec<Operator>> {
    let n = grid.n_steps;
    let mut samples = vec![Operator::zeros(x0.dim()); n + 1];
    let (start, h) = match direction {
        SeedTime::Start => (0, grid.dt()),
        SeedTime::End => (n, -grid.dt()),
    };
    samples[start] = x0.clone();
    let mut y = x0.clone();
    let mut s_from = model.snapshot(grid.node(start))?;
    for j in 0..n {
        let (from, to, mid) = match direction {
            SeedTime::Start => (j, j + 1, j),
            SeedTime::End => (n - j, n - j - 1, n - j - 1),
        };
        debug_assert_eq!(from, if h > 0.0 { to - 1 } else { to + 1 });
        let s_mid = model.snapshot(grid.midpoint(mid))?;
        let s_to = model.snapshot(grid.node(to))?;
        let raw = step(method, rhs, &s_from, &s_mid, &s_to, &y, h)?;
        if !raw.is_finite() {
            return Err(Error::NonFinite { step: j + 1 });
        }
        let defect = raw.hermiticity_defect();
        y = raw.hermitian_part();
        if let Some(cap) = cap {
            let magnitude = y.max_abs();
            if magnitude > cap {
                return Err(Error::Blowup { step: j + 1, magnitude, cap });
            }
        }
        on_step(to, &y, StepOutcome { hermiticity_defect: defect })?;
        samples[to] = y.clone();
        s_from = s_to;
    }
    Ok(samples)
}

fn check_density(rho0: &Operator) -> Result<()> {
    rho0.ensure_hermitian()?;
    let tr = rho0.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > STATE_PRECONDITION_TOL {
        return Err(Error::InvalidState(format!("initial trace {tr} differs from 1")));
    }
    let min_ev = hermitian_eigenvalues(rho0)?[0];
    if min_ev < -STATE_PRECONDITION_TOL {
        return Err(Error::InvalidState(format!("initial state has negative eigenvalue {min_ev:e}")));
    }
    Ok(())
}

fn check_model(model: &LindbladModel, x: &Operator, grid: &TimeGrid) -> Result<()> {
    grid.check()?;
    if model.dim() != x.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), found: x.dim() });
    }
    model.ensure_valid(&grid.sample_times())
}

/// Integrates `ρ̇ = −i𝓛(ρ)` forward from `rho0`.
pub fn integrate_state(
    model: &LindbladModel,
    rho0: &Operator,
    grid: &TimeGrid,
    method: Method,
) -> Result<(Trajectory, MonitorReport)> {
    check_model(model, rho0, grid)?;
    check_density(rho0)?;
    let rho0 = rho0.hermitian_part();
    let top = rho0.dim() - 1;
    let tr0 = rho0.trace();
    let mut monitors = MonitorReport {
        max_trace_drift: 0.0,
        max_hermiticity_defect: 0.0,
        min_eigenvalue: hermitian_eigenvalues(&rho0)?[0],
        max_leakage: rho0[(top, top)].re,
    };
    let samples = propagate(model, &rho0, grid, method, SeedTime::Start, &state_rhs, None, |_, rho, outcome| {
        monitors.max_trace_drift = monitors.max_trace_drift.max((rho.trace() - tr0).norm());
        monitors.max_hermiticity_defect = monitors.max_hermiticity_defect.max(outcome.hermiticity_defect);
        monitors.min_eigenvalue = monitors.min_eigenvalue.min(hermitian_eigenvalues(rho)?[0]);
        monitors.max_leakage = monitors.max_leakage.max(rho[(top, top)].re);
        Ok(())
    })?;
    Ok((Trajectory::new(*grid, samples, TrajectoryKind::State)?, monitors))
}

fn check_seed(model: &LindbladModel, seed: &Operator, grid: &TimeGrid) -> Result<()> {
    check_model(model, seed, grid)?;
    seed.ensure_hermitian()
}

/// Integrates `İ = +i𝓛*(I)`, seeded at either end of the grid.
///
/// Seeds must be Hermitian; non-Hermitian seeds are rejected.
pub fn integrate_invariant(
    model: &LindbladModel,
    seed: &Operator,
    seed_time: SeedTime,
    grid: &TimeGrid,
    method: Method,
) -> Result<Trajectory> {
    check_seed(model, seed, grid)?;
    let samples = propagate(
        model,
        &seed.hermitian_part(),
        grid,
        method,
        seed_time,
        &invariant_rhs,
        Some(INVARIANT_CAP),
        |_, _, _| Ok(()),
    )?;
    Trajectory::new(*grid, samples, TrajectoryKind::Invariant)
}

/// Same flow as [`integrate_invariant`], with `𝓛*` applied through the
/// transposed column-stacked Liouvillian matrix instead of operator products.
pub fn integrate_invariant_vectorized(
    model: &LindbladModel,
    seed: &Operator,
    seed_time: SeedTime,
    grid: &TimeGrid,
    method: Method,
) -> Result<Trajectory> {
    check_seed(model, seed, grid)?;
    let rhs = |s: &ModelSnapshot, a: &Operator| Ok(build_liouvillian_matrix(s).apply_adjoint(a).scale(I));
    let samples =
        propagate(model, &seed.hermitian_part(), grid, method, seed_time, &rhs, Some(INVARIANT_CAP), |_, _, _| Ok(()))?;
    Trajectory::new(*grid, samples, TrajectoryKind::Invariant)
}

/// `⟨I⟩(t_k) = Re tr(I(t_k)·ρ(t_k))` at every node.
pub fn conservation_series(inv: &Trajectory, state: &Trajectory) -> Result<Vec<f64>> {
    if inv.grid != state.grid {
        return Err(Error::GridMismatch(format!("{:?} vs {:?}", inv.grid, state.grid)));
    }
    if inv.kind != TrajectoryKind::Invariant || state.kind != TrajectoryKind::State {
        return Err(Error::GridMismatch("expected an invariant trajectory and a state trajectory".into()));
    }
    inv.first().check_same_dim(state.first())?;
    inv.samples
        .iter()
        .zip(&state.samples)
        .map(|(i, rho)| {
            let z = expectation(i, rho)?;
            let scale = (i.max_abs() * rho.max_abs() * i.dim() as f64).max(1.0);
            if z.im.abs() > 1e-10 * scale {
                return Err(Error::InvalidState(format!("expectation has imaginary part {:e}", z.im)));
            }
            Ok(z.re)
        })
        .collect()
}

/// `max_k |s_k − s_0|`.
pub fn max_drift(series: &[f64]) -> f64 {
    series.iter().map(|v| (v - series[0]).abs()).fold(0.0, f64::max)
}
