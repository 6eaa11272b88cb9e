// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-mode Gaussian covariance matrices in standard form.
//!
//! A standard-form covariance matrix (vacuum noise normalized to 1) is
//!
//! ```text
//!        | a  0  c+ 0  |
//!  V12 = | 0  a  0  c- |
//!        | c+ 0  b  0  |
//!        | 0  c- 0  b  |
//! ```
//!
//! and every physical, entangled one can alternatively be addressed through
//! the entropic coordinates `(s, d, g, lambda)`: `s` and `d` fix the two
//! marginal purities, `g = sqrt(det V12)` fixes the global purity, and
//! `lambda` orders the states of equal entropies by their entanglement.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues4, CMatrix4};

/// Absolute tolerance on eigenvalues in physicality tests.
pub const EIGEN_TOL: f64 = 1e-10;

/// Radicands in the correlation formula above `-RADICAND_CLAMP` (relative to
/// their natural scale) are treated as zero.
pub const RADICAND_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardFormCM {
    pub a: f64,
    pub b: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

impl StandardFormCM {
    pub const VACUUM: StandardFormCM = StandardFormCM {
        a: 1.0,
        b: 1.0,
        c_plus: 0.0,
        c_minus: 0.0,
    };

    pub fn new(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Self {
        StandardFormCM {
            a,
            b,
            c_plus,
            c_minus,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite()
            && self.b.is_finite()
            && self.c_plus.is_finite()
            && self.c_minus.is_finite()
    }

    pub(crate) fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "covariance matrix has non-finite entries: {self:?}"
            )))
        }
    }

    /// The full 4x4 real symmetric matrix in quadrature order (q1, p1, q2, p2).
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let (a, b, cp, cm) = (self.a, self.b, self.c_plus, self.c_minus);
        Matrix4::new(
            a, 0.0, cp, 0.0, //
            0.0, a, 0.0, cm, //
            cp, 0.0, b, 0.0, //
            0.0, cm, 0.0, b,
        )
    }

    /// `det V12 = (ab - c+^2)(ab - c-^2)`.
    pub fn det(&self) -> f64 {
        let ab = self.a * self.b;
        (ab - self.c_plus * self.c_plus) * (ab - self.c_minus * self.c_minus)
    }

    /// `det V1 + det V2 - 2 det C12`, the seralian of the partially
    /// transposed matrix.
    pub fn delta_tilde(&self) -> f64 {
        self.a * self.a + self.b * self.b - 2.0 * self.c_plus * self.c_minus
    }

    /// Representative of the local-rotation orbit with `c+ >= |c-|` and
    /// `c+ >= 0`; the sign of `c+ c-` is an orbit invariant and is kept.
    pub fn canonical(&self) -> StandardFormCM {
        let p = self.c_plus.abs().max(self.c_minus.abs());
        let q = self.c_plus.abs().min(self.c_minus.abs());
        let q = if self.c_plus * self.c_minus > 0.0 { q } else { -q };
        StandardFormCM::new(self.a, self.b, p, q)
    }

    /// Hermitian matrix `V12 + i Omega`.
    pub fn uncertainty_matrix(&self) -> CMatrix4 {
        let v = self.to_matrix();
        let omega = symplectic_form();
        CMatrix4::from_fn(|i, j| c(v[(i, j)], omega[(i, j)]))
    }
}

/// The two-mode symplectic form `Omega = diag(J, J)`, `J = [[0, 1], [-1, 0]]`.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalityReport {
    pub positive_definite: bool,
    pub uncertainty_ok: bool,
    pub min_eigenvalue_of_v_plus_i_omega: f64,
}

impl PhysicalityReport {
    pub fn is_physical(&self) -> bool {
        self.positive_definite && self.uncertainty_ok
    }
}

/// Checks `V12 > 0` and `V12 + i Omega >= 0` by direct diagonalization.
pub fn validate_cm(cm: &StandardFormCM, tol: f64) -> Result<PhysicalityReport> {
    cm.ensure_finite()?;
    let v = cm.to_matrix();
    let v_eigs = v.symmetric_eigenvalues();
    let min_v = v_eigs.iter().copied().fold(f64::INFINITY, f64::min);
    let min_unc = hermitian_eigenvalues4(&cm.uncertainty_matrix())[0];
    Ok(PhysicalityReport {
        positive_definite: min_v > tol,
        uncertainty_ok: min_unc >= -tol,
        min_eigenvalue_of_v_plus_i_omega: min_unc,
    })
}

/// Smallest symplectic eigenvalue of the partially transposed matrix.
pub fn ptranspose_min_symplectic(cm: &StandardFormCM) -> Result<f64> {
    cm.ensure_finite()?;
    let delta = cm.delta_tilde();
    let det = cm.det();
    let mut disc = delta * delta - 4.0 * det;
    if disc < 0.0 {
        if disc < -1e-10 * delta.abs().max(1.0).powi(2) {
            return Err(Error::NumericalDomain(format!(
                "negative discriminant {disc:e} for {cm:?}"
            )));
        }
        disc = 0.0;
    }
    let inner = (delta - disc.sqrt()).max(0.0);
    Ok((inner / 2.0).sqrt())
}

/// Logarithm-free negativity `max{0, (1 - nu)/nu}` of a two-mode Gaussian state.
pub fn gaussian_negativity(cm: &StandardFormCM) -> Result<f64> {
    let nu = ptranspose_min_symplectic(cm)?;
    if nu <= 0.0 {
        return Err(Error::NumericalDomain(format!(
            "vanishing symplectic eigenvalue for {cm:?}"
        )));
    }
    Ok(((1.0 - nu) / nu).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianEntropies {
    pub global: f64,
    pub marginal_1: f64,
    pub marginal_2: f64,
}

/// Normalized linear entropies of the global state and both reduced modes.
pub fn gaussian_entropies(cm: &StandardFormCM) -> Result<GaussianEntropies> {
    cm.ensure_finite()?;
    let det = cm.det();
    if det <= 0.0 || cm.a <= 0.0 || cm.b <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "covariance matrix is not positive definite: {cm:?}"
        )));
    }
    Ok(GaussianEntropies {
        global: 1.0 - 1.0 / det.sqrt(),
        marginal_1: 1.0 - 1.0 / cm.a,
        marginal_2: 1.0 - 1.0 / cm.b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropicParams {
    pub s: f64,
    pub d: f64,
    pub g: f64,
    pub lambda: f64,
}

impl EntropicParams {
    pub fn new(s: f64, d: f64, g: f64, lambda: f64) -> Self {
        EntropicParams { s, d, g, lambda }
    }

    pub fn is_finite(&self) -> bool {
        self.s.is_finite() && self.d.is_finite() && self.g.is_finite() && self.lambda.is_finite()
    }

    /// Diagonal entries `(a, b) = (s + d, s - d)`.
    pub fn marginals(&self) -> (f64, f64) {
        (self.s + self.d, self.s - self.d)
    }
}

/// True iff `(s, d, g, lambda)` describes a physical and entangled state.
pub fn region_check(p: &EntropicParams) -> bool {
    p.is_finite()
        && p.s >= 1.0
        && p.d.abs() <= p.s - 1.0
        && 2.0 * p.d.abs() + 1.0 <= p.g
        && p.g <= 2.0 * p.s - 1.0
        && (-1.0..=1.0).contains(&p.lambda)
}

/// `(x^2 - (2g)^2)` evaluated in factored form, clamped near zero.
fn radicand(x: f64, g: f64) -> Result<f64> {
    let r = (x - 2.0 * g) * (x + 2.0 * g);
    if r >= 0.0 {
        Ok(r)
    } else if r > -RADICAND_CLAMP * (4.0 * g * g).max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::OutOfRegion(format!("negative radicand {r:e}")))
    }
}

/// The two radicands `((f_d - h_d)^2 - 4g^2, (f_s - h_d)^2 - 4g^2)`.
fn correlation_radicands(p: &EntropicParams) -> Result<(f64, f64)> {
    let EntropicParams { s, d, g, lambda } = *p;
    let h_d = (2.0 * d * d + g) * (lambda + 1.0);
    let f = |x: f64| 4.0 * x * x + (g * g + 1.0) * (lambda - 1.0) / 2.0;
    Ok((radicand(f(d) - h_d, g)?, radicand(f(s) - h_d, g)?))
}

/// Standard form with the prescribed entropies and entanglement ordering.
///
/// Emits the sign convention `c+ >= 0 >= c-`.
pub fn from_entropic_params(p: &EntropicParams) -> Result<StandardFormCM> {
    if !p.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite parameters {p:?}")));
    }
    if !region_check(p) {
        return Err(Error::Domain(format!(
            "{p:?} violates s >= 1, |d| <= s-1, 2|d|+1 <= g <= 2s-1, lambda in [-1, 1]"
        )));
    }
    let (r_d, r_s) = correlation_radicands(p)?;
    let denom = 4.0 * (p.s * p.s - p.d * p.d).sqrt();
    let (sd, ss) = (r_d.sqrt(), r_s.sqrt());
    let (a, b) = p.marginals();
    Ok(StandardFormCM::new(a, b, (sd + ss) / denom, (sd - ss) / denom))
}

/// `c+ - c-` along the lambda direction at fixed `(s, d, g)`.
fn correlation_gap(s: f64, d: f64, g: f64, lambda: f64) -> Result<f64> {
    let p = EntropicParams::new(s, d, g, lambda);
    let (_, r_s) = correlation_radicands(&p)?;
    Ok(r_s.sqrt() / (2.0 * (s * s - d * d).sqrt()))
}

/// Inverse of [`from_entropic_params`].
///
/// Signs are canonicalized first. `lambda` is found by bisection on
/// `c+ - c-`, which is nondecreasing in `lambda`; where the map does not
/// depend on `lambda` (pure states, `g = 2|d| + 1`, separable boundary) the
/// value 1 is reported.
pub fn to_entropic_params(cm: &StandardFormCM) -> Result<EntropicParams> {
    cm.ensure_finite()?;
    let canon = cm.canonical();
    let s = 0.5 * (canon.a + canon.b);
    let d = 0.5 * (canon.a - canon.b);
    let det = canon.det();
    if det <= 0.0 {
        return Err(Error::NoSolution(format!("det V12 <= 0 for {cm:?}")));
    }
    let mut g = det.sqrt();
    const SLACK: f64 = 1e-9;
    let (g_lo, g_hi) = (2.0 * d.abs() + 1.0, 2.0 * s - 1.0);
    if s < 1.0 - SLACK || d.abs() > s - 1.0 + SLACK || g < g_lo - SLACK || g > g_hi + SLACK {
        return Err(Error::NoSolution(format!(
            "{cm:?} maps to (s, d, g) = ({s}, {d}, {g}) outside the entangled region"
        )));
    }
    let s = s.max(1.0);
    let d = d.clamp(-(s - 1.0), s - 1.0);
    g = g.clamp(2.0 * d.abs() + 1.0, (2.0 * s - 1.0).max(2.0 * d.abs() + 1.0));

    let target = canon.c_plus - canon.c_minus;
    let lo_val = correlation_gap(s, d, g, -1.0)?;
    let hi_val = correlation_gap(s, d, g, 1.0)?;
    let scale = 1.0 + hi_val.abs();
    let lambda = if hi_val - lo_val <= 1e-12 * scale {
        1.0
    } else if target < lo_val - 1e-9 * scale || target > hi_val + 1e-9 * scale {
        return Err(Error::NoSolution(format!(
            "c+ - c- = {target} outside [{lo_val}, {hi_val}] for {cm:?}"
        )));
    } else {
        let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let val = correlation_gap(s, d, g, mid)?;
            if val < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        0.5 * (lo + hi)
    };

    // c+- has a square-root edge at the ends of the lambda interval, where a
    // bisection midpoint loses half the digits; the endpoints are tried too.
    let residual = |lambda: f64| -> Result<(EntropicParams, f64)> {
        let params = EntropicParams::new(s, d, g, lambda);
        let back = from_entropic_params(&params)?;
        let err = (back.c_plus - canon.c_plus)
            .abs()
            .max((back.c_minus - canon.c_minus).abs());
        Ok((params, err))
    };
    let mut best = residual(lambda)?;
    for edge in [-1.0, 1.0] {
        let cand = residual(edge)?;
        if cand.1 < best.1 {
            best = cand;
        }
    }
    let (params, err) = best;
    if err > 1e-8 {
        return Err(Error::NoSolution(format!(
            "{cm:?} is not in the image of the parameterization (residual {err:e})"
        )));
    }
    Ok(params)
}
