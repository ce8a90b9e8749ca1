// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.

use rand::Rng;
use weakinv::action::{
    evaluate_action, grad_lam, grad_rho, gauge_shift_check, solution_path, stationarity_check, DiscretizedPath,
};
use weakinv::dynamics::{
    conservation_series, integrate_invariant, integrate_invariant_vectorized, integrate_state, Method, SeedTime,
    TimeGrid,
};
use weakinv::invariant::spectrum_series;
use weakinv::linalg::{expectation, pauli};
use weakinv::model::{LindbladModel, ScalarSchedule};
use weakinv::random;
use weakinv::scenarios::{amplitude_damping_qubit, damped_oscillator, fock_projector, number};
use weakinv::superop::{apply_adjoint, apply_liouvillian, roundoff_scale};
use weakinv::{Operator, Result, C64};

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn random_model(rng: &mut random::SeededRng, dim: usize) -> LindbladModel {
    let channels = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        random::constant_model(rng, dim, channels)
    } else {
        random::driven_model(rng, dim, channels)
    }
}

fn adjoint_pairing() -> Result<Outcome> {
    let mut rng = random::rng(1);
    let mut worst = 0.0f64;
    for trial in 0..200 {
        let dim = 2 + trial % 7;
        let model = random_model(&mut rng, dim);
        let s = model.snapshot(rng.gen_range(0.0..5.0))?;
        let a = random::hermitian(&mut rng, dim);
        let rho = random::density(&mut rng, dim);
        let lhs = expectation(&a, &apply_liouvillian(&s, &rho)?)?;
        let rhs = expectation(&apply_adjoint(&s, &a)?, &rho)?;
        worst = worst.max((lhs - rhs).norm() / roundoff_scale(&s, &a));
    }
    outcome(worst <= 1e-12, format!("worst scaled pairing defect {worst:.3e} (bound 1e-12)"))
}

fn shift_property() -> Result<Outcome> {
    let mut rng = random::rng(2);
    let mut worst = 0.0f64;
    let mut worst_identity = 0.0f64;
    for trial in 0..50 {
        let dim = 2 + trial % 7;
        let model = random_model(&mut rng, dim);
        let s = model.snapshot(rng.gen_range(0.0..5.0))?;
        let a = random::hermitian(&mut rng, dim);
        let c = if trial % 2 == 0 {
            C64::new(rng.gen_range(-3.0..3.0), 0.0)
        } else {
            C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        };
        let shifted = a.shifted(c);
        let defect = apply_adjoint(&s, &shifted)?.max_abs_diff(&apply_adjoint(&s, &a)?);
        worst = worst.max(defect / roundoff_scale(&s, &shifted));
        worst_identity = worst_identity.max(apply_adjoint(&s, &Operator::identity(dim))?.max_abs());
    }
    outcome(
        worst <= 1e-13 && worst_identity <= 1e-14,
        format!("worst scaled shift defect {worst:.3e} (bound 1e-13), max |L*(1)| {worst_identity:.3e} (bound 1e-14)"),
    )
}

fn amp_damp_run() -> Result<(LindbladModel, weakinv::dynamics::Trajectory, weakinv::dynamics::Trajectory, weakinv::dynamics::MonitorReport)> {
    let spec = amplitude_damping_qubit(1.0, 0.5)?;
    let grid = TimeGrid::new(0.0, 3.0, 3000)?;
    let (state, monitors) = integrate_state(&spec.model, &fock_projector(2, 1), &grid, Method::Rk4)?;
    let inv = integrate_invariant(&spec.model, &pauli::sigma_z(), SeedTime::Start, &grid, Method::Rk4)?;
    Ok((spec.model, state, inv, monitors))
}

fn conservation() -> Result<Outcome> {
    let gamma: f64 = 0.5;
    let (_, state, inv, _) = amp_damp_run()?;
    let series = conservation_series(&inv, &state)?;
    let worst = series.iter().map(|v| (v + 1.0).abs()).fold(0.0, f64::max);
    // closed forms: p1 = e^{-2γt}, I = diag(1, 1 − 2e^{2γt})
    let mut oracle = 0.0f64;
    for (k, (rho, i)) in state.samples.iter().zip(&inv.samples).enumerate() {
        let t = state.grid.node(k);
        oracle = oracle.max((rho[(1, 1)].re - (-2.0 * gamma * t).exp()).abs());
        oracle = oracle.max((i[(1, 1)].re - (1.0 - 2.0 * (2.0 * gamma * t).exp())).abs() / (2.0 * gamma * t).exp());
    }
    outcome(
        worst <= 1e-8 && oracle <= 1e-8,
        format!("max |<I> + 1| {worst:.3e} (bound 1e-8), closed-form deviation {oracle:.3e}"),
    )
}

fn spectrum_dichotomy() -> Result<Outcome> {
    let (_, _, inv, _) = amp_damp_run()?;
    let spectrum = spectrum_series(&inv)?;
    let k1 = 1000;
    let lower = spectrum.eigenvalues[k1][0];
    let expected = 1.0 - 2.0 * std::f64::consts::E;
    let err = (lower - expected).abs();

    let unitary = amplitude_damping_qubit(1.0, 0.0)?;
    let grid = TimeGrid::new(0.0, 3.0, 3000)?;
    let strong = integrate_invariant(&unitary.model, &pauli::sigma_z(), SeedTime::Start, &grid, Method::Rk4)?;
    let tv = spectrum_series(&strong)?.max_total_variation();
    outcome(
        err <= 1e-6 && tv <= 1e-8,
        format!("lower eigenvalue at t=1 {lower:.12} vs {expected:.12} (err {err:.3e}), γ=0 total variation {tv:.3e}"),
    )
}

fn state_health() -> Result<Outcome> {
    let (_, _, _, monitors) = amp_damp_run()?;
    outcome(
        monitors.max_trace_drift <= 1e-10 && monitors.min_eigenvalue >= -1e-8,
        format!("trace drift {:.3e} (bound 1e-10), min eigenvalue {:.3e} (bound -1e-8)", monitors.max_trace_drift, monitors.min_eigenvalue),
    )
}

fn slope(ns: &[usize], values: &[f64]) -> f64 {
    // least-squares slope of −log r against log N
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| -v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn stationarity() -> Result<Outcome> {
    let spec = amplitude_damping_qubit(1.0, 0.5)?;
    let rho0 = fock_projector(2, 1);
    let ns = [250, 500, 1000, 2000];
    let mut r_rho = Vec::new();
    let mut r_lam = Vec::new();
    let mut boundary = 0.0;
    for &n in &ns {
        let report = stationarity_check(&spec.model, &rho0, &pauli::sigma_z(), &TimeGrid::new(0.0, 1.0, n)?)?;
        r_rho.push(report.grad_rho_residual);
        r_lam.push(report.grad_lam_residual);
        if n == 1000 {
            boundary = report.boundary_rho_defect.max(report.boundary_lam_defect);
        }
    }
    let s_rho = slope(&ns, &r_rho);
    let s_lam = slope(&ns, &r_lam);
    let ok = (1.6..=2.4).contains(&s_rho) && (1.6..=2.4).contains(&s_lam) && boundary <= 1e-8;
    outcome(ok, format!("slopes rho {s_rho:.3} lam {s_lam:.3} (range [1.6, 2.4]), boundary defect {boundary:.3e}"))
}

/// Central differences along the Hermitian basis, assembled into a matrix
/// `G` such that `δS = tr(G·δX)`.
fn fd_gradient(
    path: &DiscretizedPath,
    model: &LindbladModel,
    node: usize,
    on_lambda: bool,
    eps: f64,
) -> Result<Operator> {
    let dim = path.dim();
    let mut g = Operator::zeros(dim);
    let directional = |e: &Operator| -> Result<f64> {
        let mut plus = path.clone();
        let mut minus = path.clone();
        let (p, m) = if on_lambda {
            (&mut plus.lam[node], &mut minus.lam[node])
        } else {
            (&mut plus.rho[node], &mut minus.rho[node])
        };
        p.axpy(C64::new(eps, 0.0), e);
        m.axpy(C64::new(-eps, 0.0), e);
        Ok((evaluate_action(&plus, model)? - evaluate_action(&minus, model)?) / (2.0 * eps))
    };
    for j in 0..dim {
        let mut e = Operator::zeros(dim);
        e[(j, j)] = C64::new(1.0, 0.0);
        g[(j, j)] = C64::new(directional(&e)?, 0.0);
        for k in j + 1..dim {
            let mut sym = Operator::zeros(dim);
            sym[(j, k)] = C64::new(1.0, 0.0);
            sym[(k, j)] = C64::new(1.0, 0.0);
            let mut asym = Operator::zeros(dim);
            asym[(j, k)] = C64::new(0.0, 1.0);
            asym[(k, j)] = C64::new(0.0, -1.0);
            let re = directional(&sym)? / 2.0;
            let im = directional(&asym)? / 2.0;
            g[(j, k)] = C64::new(re, im);
            g[(k, j)] = C64::new(re, -im);
        }
    }
    Ok(g)
}

fn finite_differences() -> Result<Outcome> {
    let mut rng = random::rng(7);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let model = random_model(&mut rng, 2);
        let grid = TimeGrid::new(0.0, 1.0, 50)?;
        let rho = (0..grid.len()).map(|_| random::hermitian(&mut rng, 2)).collect();
        let lam = (0..grid.len()).map(|_| random::hermitian(&mut rng, 2)).collect();
        let path = DiscretizedPath::new_unnormalized(grid, rho, lam)?;
        for (on_lambda, analytic) in [(false, grad_rho(&path, &model)?), (true, grad_lam(&path, &model)?)] {
            let scale = analytic.iter().map(Operator::max_abs).fold(0.0, f64::max);
            for (node, g) in analytic.iter().enumerate() {
                let fd = fd_gradient(&path, &model, node, on_lambda, 1e-6)?;
                worst = worst.max(fd.max_abs_diff(g) / scale);
            }
        }
    }
    outcome(worst <= 1e-8, format!("worst relative gradient error {worst:.3e} (bound 1e-8)"))
}

fn gauge_shift() -> Result<Outcome> {
    let spec = amplitude_damping_qubit(1.0, 0.5)?;
    let grid = TimeGrid::new(0.0, 1.0, 200)?;
    let solution = solution_path(&spec.model, &fock_projector(2, 1), &pauli::sigma_z(), &grid, Method::Rk4)?;
    let k0 = 80;
    let scaled_rho =
        solution.rho.iter().enumerate().map(|(k, r)| if k >= k0 { r.scale_real(1.1) } else { r.clone() }).collect();
    let synthetic = DiscretizedPath::new_unnormalized(grid, scaled_rho, solution.lam.clone())?;

    let mut rng = random::rng(8);
    let mut worst = 0.0f64;
    let mut all_unchanged = true;
    let mut min_nonnormalized_term = f64::INFINITY;
    for _ in 0..20 {
        let knots = rng.gen_range(3..=12);
        let lambda = random::tabulated_scalar(&mut rng, 0.0, 1.0, knots, 3.0);
        for (path, synthetic_path) in [(&solution, false), (&synthetic, true)] {
            let report = gauge_shift_check(path, &spec.model, &lambda)?;
            worst = worst.max(report.defect / (1.0 + report.max_abs_lambda));
            all_unchanged &= report.final_unchanged;
            if synthetic_path {
                min_nonnormalized_term = min_nonnormalized_term.min(report.multiplier_term.abs());
            }
        }
    }
    outcome(
        worst <= 1e-11 && all_unchanged && min_nonnormalized_term > 0.0,
        format!(
            "worst defect/(1+max|λ|) {worst:.3e} (bound 1e-11), Λ(t_f) unchanged {all_unchanged}, smallest non-normalized term {min_nonnormalized_term:.3e}"
        ),
    )
}

fn auxiliary_is_invariant() -> Result<Outcome> {
    let spec = amplitude_damping_qubit(1.0, 0.5)?;
    let grid = TimeGrid::new(0.0, 3.0, 3000)?;
    let path = solution_path(&spec.model, &fock_projector(2, 1), &pauli::sigma_z(), &grid, Method::Rk4)?;
    let inv = integrate_invariant_vectorized(&spec.model, &pauli::sigma_z(), SeedTime::End, &grid, Method::Rk4)?;
    let worst = path.lam.iter().zip(&inv.samples).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);

    // dense control: driven random model, generic final condition
    let mut rng = random::rng(9);
    let model = random::driven_model(&mut rng, 4, 2);
    let rho0 = random::density(&mut rng, 4);
    let lam_final = random::hermitian(&mut rng, 4);
    let grid = TimeGrid::new(0.0, 1.0, 1000)?;
    let path = solution_path(&model, &rho0, &lam_final, &grid, Method::Rk4)?;
    let inv = integrate_invariant_vectorized(&model, &lam_final, SeedTime::End, &grid, Method::Rk4)?;
    let dense = path.lam.iter().zip(&inv.samples).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
    outcome(
        worst <= 1e-12 && dense <= 1e-12,
        format!("max entrywise difference {worst:.3e}, dense random model {dense:.3e} (bound 1e-12)"),
    )
}

fn damped_oscillator_decay() -> Result<Outcome> {
    let n = 20;
    let spec = damped_oscillator(
        n,
        ScalarSchedule::sinusoidal(1.0, 0.1, 1.0, 0.0)?,
        ScalarSchedule::Constant(0.1),
    )?;
    let grid = TimeGrid::new(0.0, 3.0, 3000)?;
    let (state, monitors) = integrate_state(&spec.model, &fock_projector(n, 1), &grid, Method::Rk4)?;
    let n_final = expectation(&number(n), state.last())?.re;
    // d<n>/dt = −2γ<n> with <n>(0) = 1
    let err = (n_final - (-2.0f64 * 0.1 * 3.0).exp()).abs();
    let h0 = spec.model.snapshot(0.0)?.h;
    let inv = integrate_invariant(&spec.model, &h0, SeedTime::Start, &grid, Method::Rk4)?;
    let series = conservation_series(&inv, &state)?;
    let drift = series.iter().map(|v| (v - series[0]).abs()).fold(0.0, f64::max);
    outcome(
        err <= 1e-6 && monitors.max_leakage <= 1e-8 && drift <= 1e-6,
        format!("|<n>(3) - e^-0.6| {err:.3e}, leakage {:.3e}, <I> drift {drift:.3e}", monitors.max_leakage),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("adjoint pairing", adjoint_pairing),
        ("shift property", shift_property),
        ("conservation", conservation),
        ("spectrum dichotomy", spectrum_dichotomy),
        ("state health", state_health),
        ("action stationarity", stationarity),
        ("finite-difference gradients", finite_differences),
        ("gauge shift", gauge_shift),
        ("auxiliary operator as invariant", auxiliary_is_invariant),
        ("damped oscillator", damped_oscillator_decay),
    ];
    let mut failures = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let (status, detail) = match run() {
            Ok(o) => (if o.passed { "PASS" } else { "FAIL" }, o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} [{:>2}] {name}: {detail}", idx + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
