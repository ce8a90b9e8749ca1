// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the weakinv library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix literal has {len} entries, which is not a perfect square")]
    NotSquare { len: usize },

    #[error("operator is not Hermitian: defect {defect:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("schedule `{name}` queried at t = {t} outside its range [{lo}, {hi}]")]
    ScheduleOutOfRange { name: String, t: f64, lo: f64, hi: f64 },

    #[error("invalid schedule `{name}`: {reason}")]
    InvalidSchedule { name: String, reason: String },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value produced at step {step}")]
    NonFinite { step: usize },

    #[error("invariant magnitude {magnitude:e} exceeded cap {cap:e} at step {step}")]
    Blowup { step: usize, magnitude: f64, cap: f64 },

    #[error("trajectories are not on the same grid: {0}")]
    GridMismatch(String),

    #[error("action has imaginary part {im:e} beyond tolerance {tolerance:e}")]
    ImaginaryAction { im: f64, tolerance: f64 },

    #[error("at node {node}: {source}")]
    AtNode { node: usize, source: Box<Error> },

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
