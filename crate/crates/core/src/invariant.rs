// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Analysis of invariant trajectories.
//!
//! A weak invariant conserves its expectation value while its spectrum moves;
//! a strong invariant keeps a constant spectrum. Eigenvalue curves are
//! compared by sorted index, so the reported total variation is a lower
//! bound on the variation of any continuously matched curve.

use serde::{Deserialize, Serialize};

use crate::dynamics::{conservation_series, integrate_invariant, max_drift, Method, SeedTime, TimeGrid, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, C64};
use crate::model::LindbladModel;

/// Default strong-invariant threshold, relative to the seed magnitude.
pub const DEFAULT_STRONG_THRESHOLD: f64 = 1e-6;

/// Sorted eigenvalues at every node of an invariant trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSeries {
    pub grid: TimeGrid,
    pub eigenvalues: Vec<Vec<f64>>,
    /// `Σ_k |λ_j(t_{k+1}) − λ_j(t_k)|` per sorted index `j`.
    pub total_variation: Vec<f64>,
}

impl SpectrumSeries {
    pub fn max_total_variation(&self) -> f64 {
        self.total_variation.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "strong-like")]
    StrongLike,
    #[serde(rename = "weak")]
    Weak,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub max_expectation_drift: f64,
    pub spectrum_total_variation: Vec<f64>,
    pub classification: Classification,
    /// Absolute threshold applied: `strong_threshold · maxabs(seed)`.
    pub threshold: f64,
}

pub fn spectrum_series(inv: &Trajectory) -> Result<SpectrumSeries> {
    let eigenvalues = inv
        .samples
        .iter()
        .enumerate()
        .map(|(node, op)| hermitian_eigenvalues(op).map_err(|e| Error::AtNode { node, source: Box::new(e) }))
        .collect::<Result<Vec<_>>>()?;
    let mut total_variation = vec![0.0; inv.dim()];
    for pair in eigenvalues.windows(2) {
        for (tv, (a, b)) in total_variation.iter_mut().zip(pair[0].iter().zip(&pair[1])) {
            *tv += (b - a).abs();
        }
    }
    Ok(SpectrumSeries { grid: inv.grid, eigenvalues, total_variation })
}

/// Combines expectation-value drift with spectrum variation.
///
/// The invariant is strong-like when every sorted eigenvalue varies by at
/// most `strong_threshold · maxabs(seed)`; the seed is the sample with the
/// larger magnitude of the two ends.
pub fn analyze(inv: &Trajectory, state: &Trajectory, strong_threshold: f64) -> Result<InvariantReport> {
    let series = conservation_series(inv, state)?;
    let spectrum = spectrum_series(inv)?;
    let seed_scale = inv.first().max_abs().max(inv.last().max_abs());
    let threshold = strong_threshold * seed_scale;
    let classification =
        if spectrum.max_total_variation() <= threshold { Classification::StrongLike } else { Classification::Weak };
    Ok(InvariantReport {
        max_expectation_drift: max_drift(&series),
        spectrum_total_variation: spectrum.total_variation,
        classification,
        threshold,
    })
}

/// Integrates the seed shifted by `c·𝟙` on the same grid and returns
/// `max_k ‖I_shifted(t_k) − (I(t_k) + c·𝟙)‖_max`.
pub fn shift_check(model: &LindbladModel, inv: &Trajectory, c: f64, seed_time: SeedTime, method: Method) -> Result<f64> {
    let shift = C64::new(c, 0.0);
    let seed = match seed_time {
        SeedTime::Start => inv.first(),
        SeedTime::End => inv.last(),
    };
    let shifted = integrate_invariant(model, &seed.shifted(shift), seed_time, &inv.grid, method)?;
    Ok(shifted
        .samples
        .iter()
        .zip(&inv.samples)
        .map(|(s, i)| s.max_abs_diff(&i.shifted(shift)))
        .fold(0.0, f64::max))
}
