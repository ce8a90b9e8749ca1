// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Discretized auxiliary-operator action.
//!
//! For a path `(ρ_k, Λ_k)` on a uniform grid the action is
//!
//! ```text
//! S = − Σ_{k<N} Δt · tr[ ((Λ_{k+1} − Λ_k)/Δt − i𝓛*(Λ̄_k; t̄_k)) · ρ̄_k ] − tr(Λ_0 ρ_0)
//! ```
//!
//! with `Λ̄_k`, `ρ̄_k` step averages and `t̄_k` step midpoints. The gradients
//! below are the exact derivatives of this sum with respect to Hermitian
//! perturbations of a single node, so they match finite differences of
//! [`evaluate_action`] to roundoff.
//!
//! Interior gradients vanish for solution pairs up to the local consistency
//! error of the scheme, which is `O(Δt³)` per node. Residuals are reported as
//! functional derivatives (gradient divided by `Δt`), which are `O(Δt²)`.
//! The node-0 `ρ` gradient tends to `−Λ(t_i)` and the node-`N` `Λ` gradient
//! to `−ρ(t_f)`, the boundary terms of the variational identities.

use serde::{Deserialize, Serialize};

use crate::dynamics::{integrate_invariant, integrate_state, Method, SeedTime, TimeGrid};
use crate::error::{Error, Result};
use crate::linalg::{expectation, Operator, C64, I};
use crate::model::{LindbladModel, ModelSnapshot, ScalarSchedule};
use crate::superop::{apply_adjoint, apply_liouvillian};

/// Trace drift allowed along a normalized path.
pub const PATH_TRACE_TOL: f64 = 1e-8;

/// Paired state and auxiliary-operator samples on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedPath {
    pub grid: TimeGrid,
    pub rho: Vec<Operator>,
    pub lam: Vec<Operator>,
}

impl DiscretizedPath {
    /// Builds a path whose `ρ` nodes keep the trace of node 0.
    pub fn new(grid: TimeGrid, rho: Vec<Operator>, lam: Vec<Operator>) -> Result<Self> {
        let path = Self::new_unnormalized(grid, rho, lam)?;
        let drift = path.trace_drift();
        if drift > PATH_TRACE_TOL {
            return Err(Error::InvalidState(format!("path trace drifts by {drift:e}")));
        }
        Ok(path)
    }

    /// Builds a path without the trace-preservation requirement on `ρ`.
    pub fn new_unnormalized(grid: TimeGrid, rho: Vec<Operator>, lam: Vec<Operator>) -> Result<Self> {
        grid.check()?;
        if rho.len() != grid.len() || lam.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} ρ nodes and {} Λ nodes for {} grid nodes",
                rho.len(),
                lam.len(),
                grid.len()
            )));
        }
        let dim = rho[0].dim();
        for (node, x) in rho.iter().chain(&lam).enumerate() {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: x.dim() });
            }
            x.ensure_hermitian().map_err(|e| Error::AtNode { node: node % grid.len(), source: Box::new(e) })?;
        }
        Ok(Self { grid, rho, lam })
    }

    pub fn dim(&self) -> usize {
        self.rho[0].dim()
    }

    /// `max_k |tr ρ_k − tr ρ_0|`.
    pub fn trace_drift(&self) -> f64 {
        let tr0 = self.rho[0].trace();
        self.rho.iter().map(|r| (r.trace() - tr0).norm()).fold(0.0, f64::max)
    }

    fn rho_mid(&self, k: usize) -> Operator {
        (&self.rho[k] + &self.rho[k + 1]).scale_real(0.5)
    }

    fn lam_mid(&self, k: usize) -> Operator {
        (&self.lam[k] + &self.lam[k + 1]).scale_real(0.5)
    }
}

fn check_model(path: &DiscretizedPath, model: &LindbladModel) -> Result<()> {
    if model.dim() != path.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), found: path.dim() });
    }
    model.ensure_valid(&path.grid.sample_times())
}

fn midpoint_snapshots(path: &DiscretizedPath, model: &LindbladModel) -> Result<Vec<ModelSnapshot>> {
    (0..path.grid.n_steps).map(|k| model.snapshot(path.grid.midpoint(k))).collect()
}

fn action_terms(path: &DiscretizedPath, snaps: &[ModelSnapshot]) -> Result<C64> {
    let dt = path.grid.dt();
    let mut sum = C64::new(0.0, 0.0);
    for (k, snap) in snaps.iter().enumerate() {
        let mut c = &path.lam[k + 1] - &path.lam[k];
        c.axpy(-I * dt, &apply_adjoint(snap, &path.lam_mid(k))?);
        sum -= expectation(&c, &path.rho_mid(k))?;
    }
    Ok(sum - expectation(&path.lam[0], &path.rho[0])?)
}

/// Complex value of the discrete action before the reality check.
pub fn evaluate_action_complex(path: &DiscretizedPath, model: &LindbladModel) -> Result<C64> {
    check_model(path, model)?;
    action_terms(path, &midpoint_snapshots(path, model)?)
}

/// Discrete action `S`. Fails if its imaginary part exceeds
/// `1e-10·(1 + |Re S|)`, which signals non-Hermitian inputs.
pub fn evaluate_action(path: &DiscretizedPath, model: &LindbladModel) -> Result<f64> {
    let s = evaluate_action_complex(path, model)?;
    let tolerance = 1e-10 * (1.0 + s.re.abs());
    if s.im.abs() > tolerance {
        return Err(Error::ImaginaryAction { im: s.im, tolerance });
    }
    Ok(s.re)
}

/// `∂S/∂ρ_k` for every node, as Hermitian operators `G_k` with
/// `δS = Σ_k tr(G_k δρ_k)`.
pub fn grad_rho(path: &DiscretizedPath, model: &LindbladModel) -> Result<Vec<Operator>> {
    check_model(path, model)?;
    let snaps = midpoint_snapshots(path, model)?;
    let dt = path.grid.dt();
    let mut grads = vec![Operator::zeros(path.dim()); path.grid.len()];
    for (k, snap) in snaps.iter().enumerate() {
        let mut c = &path.lam[k + 1] - &path.lam[k];
        c.axpy(-I * dt, &apply_adjoint(snap, &path.lam_mid(k))?);
        let half = C64::new(-0.5, 0.0);
        grads[k].axpy(half, &c);
        grads[k + 1].axpy(half, &c);
    }
    grads[0].axpy(C64::new(-1.0, 0.0), &path.lam[0]);
    Ok(grads.iter().map(Operator::hermitian_part).collect())
}

/// `∂S/∂Λ_k` for every node, as Hermitian operators.
pub fn grad_lam(path: &DiscretizedPath, model: &LindbladModel) -> Result<Vec<Operator>> {
    check_model(path, model)?;
    let snaps = midpoint_snapshots(path, model)?;
    let dt = path.grid.dt();
    let mut grads = vec![Operator::zeros(path.dim()); path.grid.len()];
    for (k, snap) in snaps.iter().enumerate() {
        let rho_mid = path.rho_mid(k);
        let gen = apply_liouvillian(snap, &rho_mid)?.scale(I * (0.5 * dt));
        grads[k] += &rho_mid;
        grads[k] += &gen;
        grads[k + 1].axpy(C64::new(-1.0, 0.0), &rho_mid);
        grads[k + 1] += &gen;
    }
    grads[0].axpy(C64::new(-1.0, 0.0), &path.rho[0]);
    Ok(grads.iter().map(Operator::hermitian_part).collect())
}

/// Action value, gradient residuals and boundary terms of a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionReport {
    #[serde(rename = "action")]
    pub action_value: f64,
    /// `max_{0<k<N} ‖∂S/∂ρ_k‖_max / Δt`
    pub grad_rho_residual: f64,
    /// `max_{0<k<N} ‖∂S/∂Λ_k‖_max / Δt`
    pub grad_lam_residual: f64,
    /// `‖∂S/∂ρ_0‖_max`, which tends to `‖Λ(t_i)‖_max`.
    #[serde(rename = "boundary_rho")]
    pub boundary_rho_term: f64,
    /// `‖∂S/∂Λ_N‖_max`, which tends to `‖ρ(t_f)‖_max`.
    #[serde(rename = "boundary_lam")]
    pub boundary_lam_term: f64,
    /// `‖∂S/∂ρ_0 + Λ_0‖_max`
    pub boundary_rho_defect: f64,
    /// `‖∂S/∂Λ_N + ρ_N‖_max`
    pub boundary_lam_defect: f64,
    pub grid: TimeGrid,
}

fn interior_residual(grads: &[Operator], dt: f64) -> f64 {
    let n = grads.len() - 1;
    grads[1..n].iter().map(|g| g.max_abs() / dt).fold(0.0, f64::max)
}

/// Evaluates the action and both gradients of a path.
pub fn action_report(path: &DiscretizedPath, model: &LindbladModel) -> Result<ActionReport> {
    let action_value = evaluate_action(path, model)?;
    let g_rho = grad_rho(path, model)?;
    let g_lam = grad_lam(path, model)?;
    let dt = path.grid.dt();
    let n = path.grid.n_steps;
    Ok(ActionReport {
        action_value,
        grad_rho_residual: interior_residual(&g_rho, dt),
        grad_lam_residual: interior_residual(&g_lam, dt),
        boundary_rho_term: g_rho[0].max_abs(),
        boundary_lam_term: g_lam[n].max_abs(),
        boundary_rho_defect: (&g_rho[0] + &path.lam[0]).max_abs(),
        boundary_lam_defect: (&g_lam[n] + &path.rho[n]).max_abs(),
        grid: path.grid,
    })
}

/// Solution pair: `ρ` forward from `rho0`, `Λ` backward from `lam_final`.
pub fn solution_path(
    model: &LindbladModel,
    rho0: &Operator,
    lam_final: &Operator,
    grid: &TimeGrid,
    method: Method,
) -> Result<DiscretizedPath> {
    let (state, _) = integrate_state(model, rho0, grid, method)?;
    let lam = integrate_invariant(model, lam_final, SeedTime::End, grid, method)?;
    DiscretizedPath::new(*grid, state.samples, lam.samples)
}

/// Integrates the solution pair with RK4 and reports stationarity.
pub fn stationarity_check(
    model: &LindbladModel,
    rho0: &Operator,
    lam_final: &Operator,
    grid: &TimeGrid,
) -> Result<ActionReport> {
    action_report(&solution_path(model, rho0, lam_final, grid, Method::Rk4)?, model)
}

/// Outcome of [`gauge_shift_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeShiftReport {
    /// `S[ρ, Λ'] − S[ρ, Λ]`
    pub delta_action: f64,
    /// `Σ_k Δt·λ(t̄_k)·(tr ρ̄_k − tr ρ_0)`
    pub multiplier_term: f64,
    /// `|delta_action − multiplier_term|`
    pub defect: f64,
    /// Whether `Λ'(t_f) == Λ(t_f)` bit for bit.
    pub final_unchanged: bool,
    pub max_abs_lambda: f64,
}

/// Shifts `Λ_k → Λ_k + (∫_{t_k}^{t_f} λ ds)·𝟙` (midpoint quadrature) and
/// compares the change of the action with the Lagrange-multiplier term.
pub fn gauge_shift_check(
    path: &DiscretizedPath,
    model: &LindbladModel,
    lambda: &ScalarSchedule,
) -> Result<GaugeShiftReport> {
    check_model(path, model)?;
    let grid = &path.grid;
    for t in grid.sample_times() {
        lambda.eval("lambda", t)?;
    }
    let n = grid.n_steps;
    let dt = grid.dt();
    let lambda_mid = (0..n).map(|k| lambda.eval("lambda", grid.midpoint(k))).collect::<Result<Vec<_>>>()?;

    let mut tail = vec![0.0; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] + dt * lambda_mid[k];
    }
    let shifted_lam: Vec<Operator> =
        path.lam.iter().zip(&tail).map(|(l, &phi)| l.shifted(C64::new(phi, 0.0))).collect();
    let final_unchanged = shifted_lam[n] == path.lam[n];
    let shifted = DiscretizedPath { grid: *grid, rho: path.rho.clone(), lam: shifted_lam };

    let snaps = midpoint_snapshots(path, model)?;
    let s0 = action_terms(path, &snaps)?;
    let s1 = action_terms(&shifted, &snaps)?;
    let delta_action = (s1 - s0).re;

    let tr0 = path.rho[0].trace().re;
    let multiplier_term: f64 =
        (0..n).map(|k| dt * lambda_mid[k] * (path.rho_mid(k).trace().re - tr0)).sum();

    Ok(GaugeShiftReport {
        delta_action,
        multiplier_term,
        defect: (delta_action - multiplier_term).abs(),
        final_unchanged,
        max_abs_lambda: lambda_mid.iter().map(|v| v.abs()).fold(0.0, f64::max),
    })
}
