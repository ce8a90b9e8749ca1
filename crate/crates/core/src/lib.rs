// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad master-equation dynamics, weak invariants and a discretized
//! auxiliary-operator action.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex operators and a Hermitian eigensolver.
//! - [`model`]: time-dependent Lindblad models and schedules.
//! - [`superop`]: the generator `𝓛`, its adjoint `𝓛*` and the vectorized form.
//! - [`dynamics`]: fixed-step integration of states and invariants.
//! - [`invariant`]: conservation and spectrum analysis of invariants.
//! - [`action`]: the discretized action, its gradients and gauge shifts.
//! - [`scenarios`]: ready-made example systems.
//! - [`verify`]: randomized property suites.

// `!(x <= bound)` is used on purpose so that NaN fails checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod action;
pub mod dynamics;
pub mod error;
pub mod invariant;
pub mod linalg;
pub mod model;
pub mod random;
pub mod scenarios;
pub mod superop;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Operator, C64};
