// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! The Lindblad generator and its adjoint.
//!
//! With `ħ = 1` the master equation reads `i ∂ρ/∂t = 𝓛(ρ)` where
//!
//! ```text
//! 𝓛(ρ)  =  [H, ρ] − i Σ α_n (L_n†L_n ρ + ρ L_n†L_n − 2 L_n ρ L_n†)
//! 𝓛*(A) = −[H, A] − i Σ α_n (L_n†L_n A + A L_n†L_n − 2 L_n† A L_n)
//! ```
//!
//! The two are adjoint under the pairing `tr(A·𝓛(ρ)) = tr(𝓛*(A)·ρ)`.
//!
//! The matrix form uses column stacking: `vec(X)[j + k·d] = X[j, k]`, so that
//! `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.

use crate::error::Result;
use crate::linalg::{expectation, Operator, C64, I};
use crate::model::ModelSnapshot;

fn check_dims(s: &ModelSnapshot, x: &Operator) -> Result<()> {
    s.h.check_same_dim(x)
}

/// `𝓛(ρ)` at the snapshot time.
pub fn apply_liouvillian(s: &ModelSnapshot, rho: &Operator) -> Result<Operator> {
    check_dims(s, rho)?;
    let mut out = &s.h.matmul(rho) - &rho.matmul(&s.h);
    for ch in &s.channels {
        if ch.alpha == 0.0 {
            continue;
        }
        let mut d = &ch.l_dag_l.matmul(rho) + &rho.matmul(&ch.l_dag_l);
        d.axpy(C64::new(-2.0, 0.0), &ch.l.matmul(rho).matmul(&ch.l_dag));
        out.axpy(-I * ch.alpha, &d);
    }
    Ok(out)
}

/// `𝓛*(a)` at the snapshot time.
pub fn apply_adjoint(s: &ModelSnapshot, a: &Operator) -> Result<Operator> {
    check_dims(s, a)?;
    let mut out = &a.matmul(&s.h) - &s.h.matmul(a);
    for ch in &s.channels {
        if ch.alpha == 0.0 {
            continue;
        }
        let mut d = &ch.l_dag_l.matmul(a) + &a.matmul(&ch.l_dag_l);
        d.axpy(C64::new(-2.0, 0.0), &ch.l_dag.matmul(a).matmul(&ch.l));
        out.axpy(-I * ch.alpha, &d);
    }
    Ok(out)
}

/// `|tr(a·𝓛(ρ)) − tr(𝓛*(a)·ρ)|`.
pub fn adjoint_pairing_defect(s: &ModelSnapshot, a: &Operator, rho: &Operator) -> Result<f64> {
    a.check_same_dim(rho)?;
    let lhs = expectation(a, &apply_liouvillian(s, rho)?)?;
    let rhs = expectation(&apply_adjoint(s, a)?, rho)?;
    Ok((lhs - rhs).norm())
}

/// Column-stacking vectorization.
pub fn vectorize(x: &Operator) -> Vec<C64> {
    let d = x.dim();
    let mut v = Vec::with_capacity(d * d);
    for c in 0..d {
        for r in 0..d {
            v.push(x[(r, c)]);
        }
    }
    v
}

/// Inverse of [`vectorize`]; `v.len()` must be a perfect square.
pub fn unvectorize(v: &[C64]) -> Operator {
    let d = (v.len() as f64).sqrt().round() as usize;
    assert_eq!(d * d, v.len(), "vector length is not a perfect square");
    Operator::from_fn(d, |r, c| v[r + c * d])
}

/// `dim² × dim²` matrix `M` with `vec(𝓛(ρ)) = M·vec(ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorizedLiouvillian {
    pub matrix: Operator,
    pub t: f64,
}

impl VectorizedLiouvillian {
    pub fn dim(&self) -> usize {
        (self.matrix.dim() as f64).sqrt().round() as usize
    }

    /// `𝓛(ρ)` through the matrix.
    pub fn apply(&self, rho: &Operator) -> Operator {
        unvectorize(&self.matrix.apply(&vectorize(rho)))
    }

    /// `𝓛*(a)` through the matrix, using `vec(𝓛*(a)ᵀ) = Mᵀ·vec(aᵀ)`.
    pub fn apply_adjoint(&self, a: &Operator) -> Operator {
        let n = self.matrix.dim();
        let v = vectorize(&a.transpose());
        let out: Vec<C64> = (0..n).map(|j| (0..n).map(|k| self.matrix[(k, j)] * v[k]).sum()).collect();
        unvectorize(&out).transpose()
    }
}

/// Builds `M = (𝟙⊗H − Hᵀ⊗𝟙) − i Σ α_n (𝟙⊗L†L + (L†L)ᵀ⊗𝟙 − 2·conj(L)⊗L)`.
pub fn build_liouvillian_matrix(s: &ModelSnapshot) -> VectorizedLiouvillian {
    let d = s.dim();
    let id = Operator::identity(d);
    let mut m = &id.kron(&s.h) - &s.h.transpose().kron(&id);
    for ch in &s.channels {
        if ch.alpha == 0.0 {
            continue;
        }
        let mut term = &id.kron(&ch.l_dag_l) + &ch.l_dag_l.transpose().kron(&id);
        term.axpy(C64::new(-2.0, 0.0), &ch.l.conj().kron(&ch.l));
        m.axpy(-I * ch.alpha, &term);
    }
    VectorizedLiouvillian { matrix: m, t: s.t }
}

/// Scale used to make roundoff tolerances relative: `max(1, ‖x‖_max · generator scale)`.
pub fn roundoff_scale(s: &ModelSnapshot, x: &Operator) -> f64 {
    (x.max_abs() * s.generator_scale()).max(1.0)
}
