// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Dormand–Prince 5(4) integrator for fixed-size real systems.

use nalgebra::SVector;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-9,
            atol: 1e-12,
            initial_step: 1e-3,
            min_step: 1e-14,
            max_step: f64::INFINITY,
            max_steps: 10_000_000,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrator state: current time, solution, proposed next step and the
/// first-same-as-last derivative.
pub struct Dopri5<const N: usize, F>
where
    F: Fn(f64, &SVector<f64, N>) -> SVector<f64, N>,
{
    rhs: F,
    opts: OdeOptions,
    t: f64,
    y: SVector<f64, N>,
    k1: SVector<f64, N>,
    h: f64,
    steps: usize,
}

impl<const N: usize, F> Dopri5<N, F>
where
    F: Fn(f64, &SVector<f64, N>) -> SVector<f64, N>,
{
    pub fn new(rhs: F, t0: f64, y0: SVector<f64, N>, opts: OdeOptions) -> Self {
        let k1 = rhs(t0, &y0);
        Dopri5 {
            rhs,
            opts,
            t: t0,
            y: y0,
            k1,
            h: opts.initial_step,
            steps: 0,
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y(&self) -> &SVector<f64, N> {
        &self.y
    }

    /// Derivative at the current point.
    pub fn derivative(&self) -> &SVector<f64, N> {
        &self.k1
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Takes one accepted step, never going past `t_limit`.
    pub fn step(&mut self, t_limit: f64) -> Result<()> {
        let f = &self.rhs;
        let (t, y, k1) = (self.t, self.y, self.k1);
        loop {
            if self.steps >= self.opts.max_steps {
                return Err(Error::Integration {
                    tau: t,
                    reason: format!("step budget {} exhausted", self.opts.max_steps),
                });
            }
            let remaining = t_limit - t;
            let h = self.h.min(remaining).min(self.opts.max_step);
            if h < self.opts.min_step && remaining > self.opts.min_step {
                return Err(Error::Integration {
                    tau: t,
                    reason: format!("step size underflow (h = {h:e})"),
                });
            }
            let k2 = f(t + C2 * h, &(y + k1 * (A21 * h)));
            let k3 = f(t + C3 * h, &(y + (k1 * A31 + k2 * A32) * h));
            let k4 = f(t + C4 * h, &(y + (k1 * A41 + k2 * A42 + k3 * A43) * h));
            let k5 = f(t + C5 * h, &(y + (k1 * A51 + k2 * A52 + k3 * A53 + k4 * A54) * h));
            let k6 = f(
                t + h,
                &(y + (k1 * A61 + k2 * A62 + k3 * A63 + k4 * A64 + k5 * A65) * h),
            );
            let y_new = y + (k1 * B1 + k3 * B3 + k4 * B4 + k5 * B5 + k6 * B6) * h;
            let k7 = f(t + h, &y_new);
            let err_vec = (k1 * E1 + k3 * E3 + k4 * E4 + k5 * E5 + k6 * E6 + k7 * E7) * h;

            let mut acc = 0.0;
            for i in 0..N {
                let scale = self.opts.atol + self.opts.rtol * y[i].abs().max(y_new[i].abs());
                acc += (err_vec[i] / scale).powi(2);
            }
            let err = (acc / N as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::Integration {
                    tau: t,
                    reason: "non-finite error estimate".into(),
                });
            }
            self.steps += 1;
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                self.t = if h == remaining { t_limit } else { t + h };
                self.y = y_new;
                self.k1 = k7;
                // a step clipped at t_limit says little about the next one
                let proposal = h * factor;
                self.h = if h < self.h { proposal.max(self.h) } else { proposal };
                return Ok(());
            }
            self.h = h * factor.min(1.0);
        }
    }

    /// Integrates up to exactly `t_end`.
    pub fn advance_to(&mut self, t_end: f64) -> Result<()> {
        while self.t < t_end {
            self.step(t_end)?;
        }
        Ok(())
    }
}
