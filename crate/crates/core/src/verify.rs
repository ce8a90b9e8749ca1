// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded randomized property suites over dimensions 2 to 8.
//!
//! Every property draws its own instances from a single ChaCha stream, so a
//! report is reproducible from `(seed, trials)`. Defects are divided by a
//! per-instance scale before comparison with the tolerance.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{conservation_series, integrate_invariant, integrate_state, max_drift, Method, SeedTime, TimeGrid};
use crate::error::{Error, Result};
use crate::linalg::{expectation, hermitian_eigenvalues, Operator, C64, I};
use crate::model::{LindbladModel, ModelSnapshot};
use crate::random::{self, SeededRng};
use crate::superop::{apply_adjoint, apply_liouvillian, build_liouvillian_matrix, roundoff_scale};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;
/// Conservation runs integrate two ODEs per trial; their count is capped.
pub const MAX_CONSERVATION_TRIALS: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Negative control: replace the adjoint with a transposed-jump variant.
    #[serde(default)]
    pub break_adjoint: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, trials: 100, break_adjoint: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    /// Largest unnormalized defect seen.
    pub worst_defect: f64,
    /// Largest `defect / scale` seen; compared against `tolerance`.
    pub worst_relative: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub break_adjoint: bool,
    pub all_passed: bool,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    trials: usize,
    worst_defect: f64,
    worst_relative: f64,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tally { name, tolerance, trials: 0, worst_defect: 0.0, worst_relative: 0.0 }
    }

    fn record(&mut self, defect: f64, scale: f64) {
        self.trials += 1;
        // NaN must fail, so compare with negated ordering.
        let rel = defect / scale;
        if !(rel <= self.worst_relative) {
            self.worst_relative = rel;
        }
        if !(defect <= self.worst_defect) {
            self.worst_defect = defect;
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name.to_string(),
            passed: self.trials > 0 && self.worst_relative <= self.tolerance,
            trials: self.trials,
            worst_defect: self.worst_defect,
            worst_relative: self.worst_relative,
            tolerance: self.tolerance,
        }
    }
}

/// Transposed-jump adjoint `−[H,a] − iΣα(L†La + aL†L − 2LaL†)`.
fn broken_adjoint(s: &ModelSnapshot, a: &Operator) -> Result<Operator> {
    let mut out = &a.matmul(&s.h) - &s.h.matmul(a);
    for ch in &s.channels {
        let mut d = &ch.l_dag_l.matmul(a) + &a.matmul(&ch.l_dag_l);
        d.axpy(C64::new(-2.0, 0.0), &ch.l.matmul(a).matmul(&ch.l_dag));
        out.axpy(-I * ch.alpha, &d);
    }
    Ok(out)
}

fn dim_for(trial: usize) -> usize {
    MIN_DIM + trial % (MAX_DIM - MIN_DIM + 1)
}

fn random_model(rng: &mut SeededRng, dim: usize) -> LindbladModel {
    let channels = rng.gen_range(0..=3);
    if rng.gen_bool(0.5) {
        random::constant_model(rng, dim, channels)
    } else {
        random::driven_model(rng, dim, channels)
    }
}

fn random_snapshot(rng: &mut SeededRng, dim: usize) -> Result<ModelSnapshot> {
    let model = random_model(rng, dim);
    let t = rng.gen_range(0.0..5.0);
    model.snapshot(t)
}

fn random_complex(rng: &mut SeededRng) -> C64 {
    C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

/// Runs every property suite.
pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.trials == 0 {
        return Err(Error::InvalidParameter("trials must be ≥ 1".into()));
    }
    let adjoint: fn(&ModelSnapshot, &Operator) -> Result<Operator> =
        if opts.break_adjoint { broken_adjoint } else { apply_adjoint };
    let mut rng = random::rng(opts.seed);

    let mut pairing = Tally::new("adjoint_pairing", 1e-12);
    let mut shift_real = Tally::new("shift_real", 1e-13);
    let mut shift_complex = Tally::new("shift_complex", 1e-13);
    let mut identity = Tally::new("adjoint_of_identity", 1e-14);
    let mut hermiticity = Tally::new("hermiticity", 1e-13);
    let mut trace = Tally::new("trace_preservation", 1e-13);
    let mut matrix = Tally::new("matrix_consistency", 1e-13);
    let mut eig = Tally::new("eigenvalue_unitary_invariance", 1e-12);
    let mut conservation = Tally::new("conservation", 1e-8);

    for trial in 0..opts.trials {
        let dim = dim_for(trial);
        let s = random_snapshot(&mut rng, dim)?;
        let a = random::hermitian(&mut rng, dim);
        let rho = random::density(&mut rng, dim);
        let scale = roundoff_scale(&s, &a);
        let la = adjoint(&s, &a)?;

        let lhs = expectation(&a, &apply_liouvillian(&s, &rho)?)?;
        let rhs = expectation(&la, &rho)?;
        pairing.record((lhs - rhs).norm(), scale);

        let c_real = C64::new(rng.gen_range(-3.0..3.0), 0.0);
        shift_real.record(adjoint(&s, &a.shifted(c_real))?.max_abs_diff(&la), scale);
        let c = random_complex(&mut rng);
        shift_complex.record(adjoint(&s, &a.shifted(c))?.max_abs_diff(&la), roundoff_scale(&s, &a.shifted(c)));

        identity.record(adjoint(&s, &Operator::identity(dim))?.max_abs(), 1.0);

        // i𝓛*(a) and −i𝓛(ρ) stay Hermitian for Hermitian arguments.
        let herm_a = la.scale(I).hermiticity_defect();
        let lrho = apply_liouvillian(&s, &rho)?;
        let herm_rho = lrho.scale(-I).hermiticity_defect();
        hermiticity.record(herm_a.max(herm_rho), scale.max(roundoff_scale(&s, &rho)));

        let x = random::hermitian(&mut rng, dim);
        trace.record(apply_liouvillian(&s, &x)?.trace().norm(), roundoff_scale(&s, &x));

        let m = build_liouvillian_matrix(&s);
        let direct = m.apply(&x).max_abs_diff(&apply_liouvillian(&s, &x)?);
        let adj = m.apply_adjoint(&x).max_abs_diff(&adjoint(&s, &x)?);
        matrix.record(direct.max(adj), roundoff_scale(&s, &x) * dim as f64);

        let u = random::unitary(&mut rng, dim);
        let rotated = u.matmul(&a).matmul(&u.dagger()).hermitian_part();
        let before = hermitian_eigenvalues(&a)?;
        let after = hermitian_eigenvalues(&rotated)?;
        let diff = before.iter().zip(&after).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        eig.record(diff, a.max_abs().max(1.0) * dim as f64);
    }

    for trial in 0..opts.trials.min(MAX_CONSERVATION_TRIALS) {
        let dim = dim_for(trial);
        let model = random_model(&mut rng, dim);
        let rho0 = random::density(&mut rng, dim);
        let seed = random::hermitian(&mut rng, dim);
        // One e-folding of the generator keeps the invariant bounded.
        let rate = model.snapshot(0.0)?.generator_scale().max(1.0);
        let grid = TimeGrid::new(0.0, 1.0 / rate, 200)?;
        let (state, _) = integrate_state(&model, &rho0, &grid, Method::Rk4)?;
        let inv = integrate_invariant(&model, &seed, SeedTime::Start, &grid, Method::Rk4)?;
        let series = conservation_series(&inv, &state)?;
        let magnitude = inv.samples.iter().map(Operator::max_abs).fold(1.0, f64::max);
        conservation.record(max_drift(&series), magnitude);
    }

    let properties: Vec<PropertyResult> =
        [pairing, shift_real, shift_complex, identity, hermiticity, trace, matrix, eig, conservation]
            .into_iter()
            .map(Tally::finish)
            .collect();
    Ok(VerifyReport {
        seed: opts.seed,
        trials: opts.trials,
        break_adjoint: opts.break_adjoint,
        all_passed: properties.iter().all(|p| p.passed),
        properties,
    })
}
