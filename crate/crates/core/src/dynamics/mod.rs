// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-step integration of the master equation and of the weak-invariant
//! (auxiliary-operator) equation.
//!
//! States follow `ρ̇ = −i𝓛(ρ)`; invariants follow `İ = +i𝓛*(I)`, forward from
//! a seed at `t_start` or backward from a seed at `t_end`. Schedules are
//! sampled at nodes and step midpoints. Both flows are re-symmetrized
//! `(X + X†)/2` after every step.

mod export;
mod grid;
mod integrate;

pub use export::{format_float, read_trajectory_csv, trajectory_header, write_trajectory_csv};
pub use grid::{TimeGrid, Trajectory, TrajectoryKind};
pub use integrate::{
    conservation_series, integrate_invariant, integrate_invariant_vectorized, integrate_state, max_drift, Method,
    MonitorReport, SeedTime, INVARIANT_CAP, STATE_PRECONDITION_TOL,
};
