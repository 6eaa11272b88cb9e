// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution under the field-driven generator.

use std::io::Write;

use nalgebra::SVector;

use super::ode::{Dopri5, OdeOptions};
use super::Dissipator;
use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::gaussian::{validate_cm, StandardFormCM, EIGEN_TOL};
use crate::linalg::{c, CMatrix4};
use crate::qubit::{anti_x_leak, linear_entropy, negativity, TwoQubitState};

/// Steady state is declared once the Frobenius norm of the generator image
/// drops below this value.
pub const STEADY_RHS_TOL: f64 = 1e-10;

/// Tolerance used to validate every emitted trajectory state.
pub const TRAJECTORY_STATE_TOL: f64 = 1e-8;

/// Upper limit on dimensionless time when waiting for convergence.
const MAX_SETTLE_TIME: f64 = 1e5;

type Packed = SVector<f64, 32>;

fn pack(m: &CMatrix4) -> Packed {
    let mut v = Packed::zeros();
    for i in 0..4 {
        for j in 0..4 {
            v[8 * i + 2 * j] = m[(i, j)].re;
            v[8 * i + 2 * j + 1] = m[(i, j)].im;
        }
    }
    v
}

fn unpack(v: &Packed) -> CMatrix4 {
    CMatrix4::from_fn(|i, j| c(v[8 * i + 2 * j], v[8 * i + 2 * j + 1]))
}

/// Averages `m` with its adjoint to strip integrator round-off.
fn hermitize(m: &CMatrix4) -> CMatrix4 {
    (m + m.adjoint()) * c(0.5, 0.0)
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<TwoQubitState>,
    pub resource: StandardFormCM,
    pub gamma: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &TwoQubitState {
        self.states.last().expect("trajectory has at least two points")
    }

    /// Largest anti-X entry seen anywhere along the trajectory.
    pub fn max_anti_x_leak(&self) -> f64 {
        self.states
            .iter()
            .map(|s| s.anti_x_leak())
            .fold(0.0, f64::max)
    }
}

fn check_resource(cm: &StandardFormCM) -> Result<()> {
    let report = validate_cm(cm, EIGEN_TOL)?;
    if !report.is_physical() {
        return Err(Error::Domain(format!(
            "resource {cm:?} violates V12 + i Omega >= 0 (min eigenvalue {:e})",
            report.min_eigenvalue_of_v_plus_i_omega
        )));
    }
    Ok(())
}

/// Integrates the master equation from `initial` and samples the solution at
/// `n_steps` equally spaced times in `[0, tau_max]`.
///
/// The coefficient matrix is `gamma (V12 + i Omega)`, so with `gamma = 1` the
/// time axis is the dimensionless time of the generator; other values stretch
/// the axis by `1/gamma` and leave the fixed point unchanged.
pub fn evolve(
    initial: &TwoQubitState,
    cm: &StandardFormCM,
    gamma: f64,
    tau_max: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!("gamma = {gamma} must be positive")));
    }
    if !(tau_max > 0.0) || !tau_max.is_finite() {
        return Err(Error::Domain(format!("tau_max = {tau_max} must be positive")));
    }
    if n_steps < 2 {
        return Err(Error::Domain(format!("n_steps = {n_steps} must be at least 2")));
    }
    check_resource(cm)?;

    let dissipator = Dissipator::new(&(cm.uncertainty_matrix() * c(gamma, 0.0)));
    let rhs = |_t: f64, y: &Packed| pack(&dissipator.apply(&unpack(y)));
    let mut ode = Dopri5::new(rhs, 0.0, pack(initial.matrix()), OdeOptions::default());

    let times: Vec<f64> = (0..n_steps)
        .map(|k| tau_max * k as f64 / (n_steps - 1) as f64)
        .collect();
    let mut states = Vec::with_capacity(n_steps);
    states.push(*initial);
    for &t in &times[1..] {
        ode.advance_to(t)?;
        let m = hermitize(&unpack(ode.y()));
        let state = TwoQubitState::with_tolerance(
            m,
            TRAJECTORY_STATE_TOL,
            TRAJECTORY_STATE_TOL,
            TRAJECTORY_STATE_TOL,
        )
        .map_err(|e| Error::Integration {
            tau: t,
            reason: format!("state left the density-matrix set: {e}"),
        })?;
        states.push(state);
    }
    Ok(Trajectory {
        times,
        states,
        resource: *cm,
        gamma,
    })
}

#[derive(Debug, Clone)]
pub struct SteadyStateRun {
    pub state: TwoQubitState,
    /// Dimensionless time at which the convergence test first passed.
    pub tau: f64,
    pub rhs_norm: f64,
    pub steps: usize,
}

/// Integrates in dimensionless time until the generator image has norm
/// below `rhs_tol`.
pub fn evolve_to_steady_state(
    initial: &TwoQubitState,
    cm: &StandardFormCM,
    rhs_tol: f64,
) -> Result<SteadyStateRun> {
    check_resource(cm)?;
    let dissipator = Dissipator::for_resource(cm);
    // h |L| <= 1 keeps every mode contracting, so the iterates settle on the
    // fixed point instead of hovering at the stability edge
    let opts = OdeOptions {
        max_step: 1.0 / dissipator.superoperator().norm(),
        ..OdeOptions::default()
    };
    let rhs = |_t: f64, y: &Packed| pack(&dissipator.apply(&unpack(y)));
    let mut ode = Dopri5::new(rhs, 0.0, pack(initial.matrix()), opts);
    loop {
        let norm = ode.derivative().norm();
        if norm < rhs_tol {
            let m = hermitize(&unpack(ode.y()));
            let state = TwoQubitState::with_tolerance(
                m,
                TRAJECTORY_STATE_TOL,
                TRAJECTORY_STATE_TOL,
                TRAJECTORY_STATE_TOL,
            )?;
            return Ok(SteadyStateRun {
                state,
                tau: ode.t(),
                rhs_norm: norm,
                steps: ode.steps(),
            });
        }
        if ode.t() >= MAX_SETTLE_TIME {
            return Err(Error::Integration {
                tau: ode.t(),
                reason: format!("no convergence, |L rho| = {norm:e}"),
            });
        }
        ode.step(MAX_SETTLE_TIME)?;
    }
}

const ENTRY_LABELS: [&str; 4] = ["00", "01", "10", "11"];

/// Writes `tau`, the real and imaginary parts of all 16 entries, the anti-X
/// leak, negativity and global linear entropy, one row per sample.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["tau".to_string()];
    for r in ENTRY_LABELS {
        for s in ENTRY_LABELS {
            header.push(format!("re_{r}_{s}"));
            header.push(format!("im_{r}_{s}"));
        }
    }
    header.extend(["anti_x_leak", "negativity", "linear_entropy"].map(String::from));
    w.write_record(&header)?;
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let m = state.matrix();
        let mut row = vec![fmt_f64(*t)];
        for i in 0..4 {
            for j in 0..4 {
                row.push(fmt_f64(m[(i, j)].re));
                row.push(fmt_f64(m[(i, j)].im));
            }
        }
        row.push(fmt_f64(anti_x_leak(m)));
        row.push(fmt_f64(negativity(state)));
        row.push(fmt_f64(linear_entropy(state)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
