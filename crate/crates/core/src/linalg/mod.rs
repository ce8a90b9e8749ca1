// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex operator algebra.

mod eigen;
mod operator;

pub use eigen::{hermitian_eigenvalues, jacobi_residual};
pub use operator::{commutator, dagger, expectation, hs_inner, pauli, trace, Operator, C64, HERMITIAN_RTOL, I, ONE, ZERO};
