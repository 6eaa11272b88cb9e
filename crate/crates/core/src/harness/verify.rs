// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Bundled cross-checks between closed forms and independent numerics.

use nalgebra::SVector;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::{sample_at, sample_rng, SamplingConstraints};
use crate::atlas::{
    entangled_window_grid, gmems, mems_boundary, qlems_negativity, qmems_g, qmems_negativity,
    symmetric_s_for_local_entropy, werner_limit,
};
use crate::error::Result;
use crate::gaussian::{from_entropic_params, gaussian_entropies, to_entropic_params, StandardFormCM};
use crate::interface::{
    bloch_rhs, evolve, kossakowski, mapped_global_entropy, mapped_marginal_entropy,
    mapped_negativity, steady_state, Dissipator,
};
use crate::linalg::{c, trace_distance, CMatrix4};
use crate::qubit::{linear_entropy, linear_entropy_single, marginals, negativity, XState};

pub type SteadyStateFn = dyn Fn(&StandardFormCM) -> Result<XState> + Sync;

pub struct VerifyOptions<'a> {
    /// Random resources per sampled check.
    pub samples: usize,
    pub seed: u64,
    /// Steady-state implementation under test.
    pub steady_state: &'a SteadyStateFn,
    /// Extra covariance matrices fed to the complete-positivity check.
    pub extra_resources: Vec<StandardFormCM>,
}

impl Default for VerifyOptions<'static> {
    fn default() -> Self {
        VerifyOptions {
            samples: 200,
            seed: 2026,
            steady_state: &steady_state,
            extra_resources: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}

/// Running maximum of a residual, remembering where it happened.
struct Worst {
    value: f64,
    at: String,
    cases: usize,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: 0.0,
            at: String::new(),
            cases: 0,
        }
    }

    fn push(&mut self, residual: f64, at: impl FnOnce() -> String) {
        self.cases += 1;
        // NaN counts as a failure
        if !(residual <= self.value) {
            self.value = if residual.is_nan() { f64::INFINITY } else { residual };
            self.at = at();
        }
    }

    fn finish(self, name: &'static str, tolerance: f64) -> CheckResult {
        CheckResult {
            name,
            passed: self.value <= tolerance,
            cases: self.cases,
            worst_residual: self.value,
            tolerance,
            detail: self.at,
        }
    }
}

fn failed(name: &'static str, tolerance: f64, err: impl std::fmt::Display) -> CheckResult {
    CheckResult {
        name,
        passed: false,
        cases: 0,
        worst_residual: f64::INFINITY,
        tolerance,
        detail: err.to_string(),
    }
}

fn run_check(name: &'static str, tolerance: f64, body: impl FnOnce(&mut Worst) -> Result<()>) -> CheckResult {
    let mut worst = Worst::new();
    match body(&mut worst) {
        Ok(()) => worst.finish(name, tolerance),
        Err(e) => failed(name, tolerance, e),
    }
}

/// Fixed point of the 16x16 generator with unit trace, by direct solve.
fn null_space_state(cm: &StandardFormCM) -> Option<CMatrix4> {
    let mut l = Dissipator::for_resource(cm).superoperator();
    for col in 0..16 {
        l[(0, col)] = if col % 5 == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) };
    }
    let mut rhs = SVector::<Complex64, 16>::zeros();
    rhs[0] = c(1.0, 0.0);
    let v = l.lu().solve(&rhs)?;
    Some(CMatrix4::from_fn(|i, j| v[4 * i + j]))
}

/// Uncertainty relation from symplectic invariants: `V > 0`, `det V >= 1`
/// and `1 + det V - Delta >= 0`.
fn uncertainty_verdict(cm: &StandardFormCM, tol: f64) -> bool {
    let (a, b, cp, cm_) = (cm.a, cm.b, cm.c_plus, cm.c_minus);
    let positive = a > 0.0 && b > 0.0 && a * b - cp * cp > 0.0 && a * b - cm_ * cm_ > 0.0;
    let det = (a * b - cp * cp) * (a * b - cm_ * cm_);
    let delta = a * a + b * b + 2.0 * cp * cm_;
    positive && det >= 1.0 - tol && 1.0 + det - delta >= -tol
}

fn random_x_state<R: Rng>(rng: &mut R) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() + 1e-3);
    let total: f64 = w.iter().sum();
    let p = w.map(|x| x / total);
    let outer = rng.random_range(-1.0..=1.0) * (p[0] * p[3]).sqrt();
    let inner = rng.random_range(-1.0..=1.0) * (p[1] * p[2]).sqrt();
    XState::new(p, outer, inner)
}

/// Runs every check with default options.
pub fn verify_suite() -> VerifyReport {
    verify_suite_with(&VerifyOptions::default())
}

pub fn verify_suite_with(opts: &VerifyOptions<'_>) -> VerifyReport {
    let constraints = SamplingConstraints::default();
    let resources: Vec<StandardFormCM> = (0..opts.samples as u64)
        .filter_map(|i| from_entropic_params(&sample_at(opts.seed, i, &constraints)).ok())
        .collect();
    let hook = opts.steady_state;
    let mut checks = Vec::new();

    checks.push(run_check("steady_state_vs_null_space", 1e-9, |w| {
        for cm in &resources {
            let rho = hook(cm)?.to_matrix();
            let oracle = null_space_state(cm).ok_or_else(|| {
                crate::Error::Consistency(format!("singular generator for {cm:?}"))
            })?;
            w.push(trace_distance(&rho, &oracle), || format!("{cm:?}"));
        }
        Ok(())
    }));

    checks.push(run_check("steady_state_generator_residual", 1e-10, |w| {
        for cm in &resources {
            let rho = hook(cm)?.to_matrix();
            let image = Dissipator::for_resource(cm).apply(&rho);
            w.push(image.norm() / (cm.a + cm.b), || format!("{cm:?}"));
        }
        Ok(())
    }));

    checks.push(run_check("negativity_closed_form", 1e-10, |w| {
        for cm in &resources {
            let rho = hook(cm)?.to_state()?;
            w.push((negativity(&rho) - mapped_negativity(cm)?).abs(), || format!("{cm:?}"));
        }
        Ok(())
    }));

    checks.push(run_check("global_entropy_closed_form", 1e-10, |w| {
        for cm in &resources {
            let rho = hook(cm)?.to_state()?;
            w.push((linear_entropy(&rho) - mapped_global_entropy(cm)?).abs(), || format!("{cm:?}"));
        }
        Ok(())
    }));

    checks.push(run_check("marginal_entropy_transfer", 1e-10, |w| {
        for cm in &resources {
            let rho = hook(cm)?.to_state()?;
            let (ra, rb) = marginals(&rho);
            let field = gaussian_entropies(cm)?;
            let r = (linear_entropy_single(&ra) - mapped_marginal_entropy(field.marginal_1))
                .abs()
                .max((linear_entropy_single(&rb) - mapped_marginal_entropy(field.marginal_2)).abs());
            w.push(r, || format!("{cm:?}"));
        }
        Ok(())
    }));

    checks.push(run_check("bloch_equations", 1e-12, |w| {
        let mut rng = sample_rng(opts.seed, u64::MAX);
        for cm in &resources {
            let x = random_x_state(&mut rng);
            let full = Dissipator::for_resource(cm).apply(&x.to_matrix());
            let d = bloch_rhs(&x, cm);
            let mut r: f64 = 0.0;
            for k in 0..4 {
                r = r.max((full[(k, k)].re - d.populations[k]).abs());
            }
            r = r.max((full[(0, 3)].re - d.coherence_outer).abs());
            r = r.max((full[(1, 2)].re - d.coherence_inner).abs());
            w.push(r / (cm.a + cm.b), || format!("{cm:?}"));
        }
        Ok(())
    }));

    checks.push(run_check("complete_positivity_equivalence", 0.0, |w| {
        let mut rng = sample_rng(opts.seed, u64::MAX - 1);
        let mut pool: Vec<StandardFormCM> = (0..10 * opts.samples.max(1))
            .map(|_| {
                StandardFormCM::new(
                    rng.random_range(0.2..4.0),
                    rng.random_range(0.2..4.0),
                    rng.random_range(-4.0..4.0),
                    rng.random_range(-4.0..4.0),
                )
            })
            .collect();
        pool.extend(resources.iter().copied());
        pool.extend(opts.extra_resources.iter().copied());
        let mut mismatches = 0usize;
        let mut first = String::new();
        for cm in &pool {
            let cp = kossakowski(cm, 1.0)?.is_completely_positive(1e-9);
            if cp != uncertainty_verdict(cm, 1e-9) {
                mismatches += 1;
                if first.is_empty() {
                    first = format!("{cm:?}");
                }
            }
        }
        w.cases = pool.len();
        w.value = mismatches as f64;
        w.at = first;
        Ok(())
    }));

    checks.push(run_check("entropic_round_trip", 1e-8, |w| {
        for cm in &resources {
            let back = from_entropic_params(&to_entropic_params(cm)?)?;
            let r = (back.c_plus - cm.c_plus).abs().max((back.c_minus - cm.c_minus).abs());
            w.push(r, || format!("{cm:?}"));
        }
        Ok(())
    }));

    checks.push(run_check("qmems_closed_form", 1e-8, |w| {
        for (s_loc, s) in entangled_window_grid(30) {
            let cm = gmems(symmetric_s_for_local_entropy(s_loc)?, 0.0, qmems_g(s_loc, s)?)?;
            let r = (qmems_negativity(s_loc, s)? - mapped_negativity(&cm)?).abs();
            w.push(r, || format!("S_loc = {s_loc}, S = {s}"));
        }
        Ok(())
    }));

    checks.push(run_check("qlems_below_qmems", 1e-10, |w| {
        for (s_loc, s) in entangled_window_grid(20) {
            let excess = qlems_negativity(s_loc, s)? - qmems_negativity(s_loc, s)?;
            w.push(excess.max(0.0), || format!("S_loc = {s_loc}, S = {s}"));
        }
        Ok(())
    }));

    checks.push(run_check("werner_limit", 1e-2, |w| {
        for g in [1.1, 1.5, 2.0, 3.0] {
            let approx = werner_limit(g, 100.0)?;
            let off_curve =
                (negativity(&approx.image) - mems_boundary(linear_entropy(&approx.image))).abs();
            w.push(approx.residual.max(off_curve), || format!("g = {g}"));
        }
        w.push(mems_boundary(8.0 / 9.0), || "mems zero point".into());
        Ok(())
    }));

    checks.push(run_check("x_block_closure", 1e-10, |w| {
        let mut rng = sample_rng(opts.seed, u64::MAX - 2);
        for cm in resources.iter().take(5) {
            let start = random_x_state(&mut rng).to_state()?;
            let traj = evolve(&start, cm, 1.0, 5.0, 11)?;
            w.push(traj.max_anti_x_leak(), || format!("{cm:?}"));
        }
        Ok(())
    }));

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { passed, checks }
}
