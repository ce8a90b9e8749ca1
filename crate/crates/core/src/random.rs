// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random operators and models for property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Operator, C64};
use crate::model::{Channel, LindbladModel, OperatorSchedule, ScalarSchedule};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn operator<R: Rng>(rng: &mut R, dim: usize) -> Operator {
    Operator::from_fn(dim, |_, _| entry(rng))
}

pub fn hermitian<R: Rng>(rng: &mut R, dim: usize) -> Operator {
    operator(rng, dim).hermitian_part()
}

/// `A A† / tr(A A†)`, exactly Hermitian and unit trace up to roundoff.
pub fn density<R: Rng>(rng: &mut R, dim: usize) -> Operator {
    let a = operator(rng, dim);
    let p = a.matmul(&a.dagger()).hermitian_part();
    p.scale_real(1.0 / p.trace().re)
}

/// Pure state `|v⟩⟨v|` with random normalized `v`.
pub fn pure_state<R: Rng>(rng: &mut R, dim: usize) -> Operator {
    let v: Vec<C64> = (0..dim).map(|_| entry(rng)).collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let v: Vec<C64> = v.iter().map(|z| z / norm).collect();
    Operator::outer(&v)
}

/// `exp(g)` by scaling and squaring with a Taylor kernel.
pub fn expm(g: &Operator) -> Operator {
    let norm = g.frobenius_norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = g.scale_real(0.5f64.powi(squarings as i32));
    let mut sum = Operator::identity(g.dim());
    let mut term = Operator::identity(g.dim());
    for k in 1..=18 {
        term = term.matmul(&scaled).scale_real(1.0 / k as f64);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Unitary `exp(i·H)` from a random Hermitian generator.
pub fn unitary<R: Rng>(rng: &mut R, dim: usize) -> Operator {
    let h = hermitian(rng, dim);
    expm(&h.scale(C64::new(0.0, 1.0)))
}

/// Time-independent model with a random Hermitian Hamiltonian and
/// `channels` random Lindblad operators with rates in `[0, 1)`.
pub fn constant_model<R: Rng>(rng: &mut R, dim: usize, channels: usize) -> LindbladModel {
    let h = hermitian(rng, dim);
    let chans = (0..channels).map(|_| (operator(rng, dim), rng.gen_range(0.0..1.0))).collect();
    LindbladModel::constant(h, chans).expect("random model dimensions agree")
}

/// Model with a sinusoidally modulated Hamiltonian and sinusoidal rates
/// that stay nonnegative.
pub fn driven_model<R: Rng>(rng: &mut R, dim: usize, channels: usize) -> LindbladModel {
    let h = OperatorSchedule::scaled(
        ScalarSchedule::sinusoidal(1.0, rng.gen_range(0.0..0.5), rng.gen_range(0.5..2.0), rng.gen_range(0.0..3.0))
            .unwrap(),
        hermitian(rng, dim),
    );
    let chans = (0..channels)
        .map(|_| {
            let base = rng.gen_range(0.1..0.6);
            Channel::new(
                OperatorSchedule::Constant(operator(rng, dim)),
                ScalarSchedule::sinusoidal(base, rng.gen_range(0.0..base), rng.gen_range(0.5..2.0), 0.0).unwrap(),
            )
        })
        .collect();
    LindbladModel::new(dim, h, chans).expect("random model dimensions agree")
}

/// Tabulated scalar schedule on `[t0, t1]` with `knots` random values in `[-amp, amp)`.
pub fn tabulated_scalar<R: Rng>(rng: &mut R, t0: f64, t1: f64, knots: usize, amp: f64) -> ScalarSchedule {
    let knots = knots.max(2);
    let times: Vec<f64> = (0..knots).map(|j| t0 + (t1 - t0) * j as f64 / (knots - 1) as f64).collect();
    let values = (0..knots).map(|_| rng.gen_range(-amp..amp)).collect();
    ScalarSchedule::tabulated(times, values).expect("increasing knots")
}
