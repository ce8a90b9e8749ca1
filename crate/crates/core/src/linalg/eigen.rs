// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies a real Jacobi rotation to the resulting real
//! symmetric 2×2 block. Sweeps stop once the off-diagonal Frobenius norm
//! falls below `1e-13` of its initial value (with an absolute floor tied to
//! the matrix norm).

use super::operator::{Operator, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_RTOL: f64 = 1e-13;
const ABS_FLOOR: f64 = 1e-14;

fn off_diagonal_norm(a: &Operator) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Diagonalizes a Hermitian matrix in place, returning the rotated matrix.
///
/// The input must already be exactly Hermitian; callers symmetrize first.
fn jacobi_diagonalize(mut a: Operator) -> Result<Operator> {
    let n = a.dim();
    let off0 = off_diagonal_norm(&a);
    let tol = (OFF_RTOL * off0).max(ABS_FLOOR * a.frobenius_norm());
    let mut off = off0;
    let mut sweeps = 0;
    while off > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        off = off_diagonal_norm(&a);
        sweeps += 1;
    }
    Ok(a)
}

fn rotate(a: &mut Operator, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // skip pivots that are negligible against both diagonal entries
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau == 0.0 { 1.0 } else { tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) · [[c, s], [-s, c]] acting on (p, q)
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    let n = a.dim();
    // A ← A·J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // A ← J†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// Ascending eigenvalues of a Hermitian operator.
///
/// Rejects inputs whose Hermiticity defect exceeds the operator tolerance;
/// accepted inputs are symmetrized before rotation.
pub fn hermitian_eigenvalues(a: &Operator) -> Result<Vec<f64>> {
    a.ensure_hermitian()?;
    let rotated = jacobi_diagonalize(a.hermitian_part())?;
    let mut values: Vec<f64> = (0..a.dim()).map(|j| rotated[(j, j)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Off-diagonal residual of the final rotated matrix, for diagnostics.
pub fn jacobi_residual(a: &Operator) -> Result<f64> {
    a.ensure_hermitian()?;
    let rotated = jacobi_diagonalize(a.hermitian_part())?;
    Ok(rotated
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(i, _)| i / a.dim() != i % a.dim())
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max))
}
