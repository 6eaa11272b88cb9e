// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! The field-to-qubit dissipative map.
//!
//! Two qubits A and B are driven by the two modes of a Gaussian field with
//! covariance matrix `V12`. Eliminating the field gives a Lindblad generator
//! on the qubits,
//!
//! ```text
//! d rho / d tau = sum_jk D_jk (O_j rho O_k - {O_k O_j, rho}/2),
//! O = (sx (x) 1, sy (x) 1, 1 (x) sx, 1 (x) sy),
//! D = gamma (V12 + i Omega),
//! ```
//!
//! whose unique fixed point is available in closed form. This module holds
//! the generator, the closed-form steady state and its entropies and
//! negativity, and the reduced equations of motion on the X block.

mod dynamics;
mod ode;

pub use dynamics::{
    evolve, evolve_to_steady_state, write_trajectory_csv, SteadyStateRun, Trajectory,
    STEADY_RHS_TOL,
};
pub use ode::{Dopri5, OdeOptions};

use std::sync::OnceLock;

use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::StandardFormCM;
use crate::linalg::{c, hermitian_eigenvalues4, CMatrix4};
use crate::qubit::XState;

/// 16x16 superoperator acting on row-major vectorized density matrices.
pub type Superoperator = SMatrix<Complex64, 16, 16>;

/// The four jump operators `sx_A, sy_A, sx_B, sy_B`.
pub fn jump_operators() -> &'static [CMatrix4; 4] {
    static OPS: OnceLock<[CMatrix4; 4]> = OnceLock::new();
    OPS.get_or_init(|| {
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        let sx = nalgebra::Matrix2::new(z, one, one, z);
        let sy = nalgebra::Matrix2::new(z, -i, i, z);
        let id = nalgebra::Matrix2::identity();
        [
            sx.kronecker(&id),
            sy.kronecker(&id),
            id.kronecker(&sx),
            id.kronecker(&sy),
        ]
    })
}

/// Kossakowski matrix of the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientMatrix {
    pub d: CMatrix4,
    pub gamma: f64,
}

impl CoefficientMatrix {
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues4(&self.d)[0]
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues4(&self.d)
    }

    /// The generated semigroup is completely positive iff `D >= 0`.
    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }
}

/// `D = gamma (V12 + i Omega)`.
pub fn kossakowski(cm: &StandardFormCM, gamma: f64) -> Result<CoefficientMatrix> {
    cm.ensure_finite()?;
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!("coupling gamma = {gamma} must be positive")));
    }
    Ok(CoefficientMatrix {
        d: cm.uncertainty_matrix() * c(gamma, 0.0),
        gamma,
    })
}

/// Precomputed pieces of the Lindblad dissipator for one coefficient matrix.
#[derive(Debug, Clone)]
pub struct Dissipator {
    d: CMatrix4,
    /// `sum_jk D_jk O_k O_j`
    anticommutator: CMatrix4,
}

impl Dissipator {
    pub fn new(d: &CMatrix4) -> Self {
        let ops = jump_operators();
        let mut anticommutator = CMatrix4::zeros();
        for j in 0..4 {
            for k in 0..4 {
                anticommutator += ops[k] * ops[j] * d[(j, k)];
            }
        }
        Dissipator {
            d: *d,
            anticommutator,
        }
    }

    /// Generator in dimensionless time for a resource: coefficient matrix
    /// `V12 + i Omega`.
    pub fn for_resource(cm: &StandardFormCM) -> Self {
        Self::new(&cm.uncertainty_matrix())
    }

    pub fn apply(&self, rho: &CMatrix4) -> CMatrix4 {
        let ops = jump_operators();
        let mut out = (self.anticommutator * rho + rho * self.anticommutator) * c(-0.5, 0.0);
        for j in 0..4 {
            let left = ops[j] * rho;
            for (k, op) in ops.iter().enumerate() {
                let djk = self.d[(j, k)];
                if djk != c(0.0, 0.0) {
                    out += left * op * djk;
                }
            }
        }
        out
    }

    /// Matrix of the generator on row-major `vec(rho)`.
    pub fn superoperator(&self) -> Superoperator {
        let mut l = Superoperator::zeros();
        for col in 0..16 {
            let mut basis = CMatrix4::zeros();
            basis[(col / 4, col % 4)] = c(1.0, 0.0);
            let image = self.apply(&basis);
            for row in 0..16 {
                l[(row, col)] = image[(row / 4, row % 4)];
            }
        }
        l
    }
}

/// `z = (a+b)^2 - 2(c+^2 + c-^2)` and `delta = 4 a b z`.
fn normalizers(cm: &StandardFormCM) -> Result<(f64, f64)> {
    cm.ensure_finite()?;
    let sum = cm.a + cm.b;
    let z = sum * sum - 2.0 * (cm.c_plus * cm.c_plus + cm.c_minus * cm.c_minus);
    let delta = 4.0 * cm.a * cm.b * z;
    if !(z > 1e-12 * sum * sum) || !(delta > 0.0) {
        return Err(Error::DegenerateResource(format!(
            "z = {z:e}, delta = {delta:e} for {cm:?}"
        )));
    }
    Ok((z, delta))
}

/// Closed-form fixed point of the generator.
pub fn steady_state(cm: &StandardFormCM) -> Result<XState> {
    let (z, delta) = normalizers(cm)?;
    let (a, b) = (cm.a, cm.b);
    let sum2 = (a + b) * (a + b);
    let p00 = ((a * b - a - b) * z + sum2) / delta;
    let p01 = p00 + 2.0 * (a * z - sum2) / delta;
    let p10 = p00 + 2.0 * (b * z - sum2) / delta;
    let p11 = 1.0 - p00 - p01 - p10;
    let outer = 2.0 * (a + b) * (cm.c_minus - cm.c_plus) / delta;
    let inner = 2.0 * (a + b) * (cm.c_minus + cm.c_plus) / delta;
    Ok(XState::new([p00, p01, p10, p11], outer, inner))
}

/// Negativity of the steady state in closed form.
///
/// Uses `mu = sqrt(z^2 (a-b)^2 + 4 (a+b)^2 (c+ - c-)^2)`, which stays finite
/// for symmetric resources.
pub fn mapped_negativity(cm: &StandardFormCM) -> Result<f64> {
    let (z, delta) = normalizers(cm)?;
    let (a, b) = (cm.a, cm.b);
    let diff = cm.c_plus - cm.c_minus;
    let mu = (z * z * (a - b) * (a - b) + 4.0 * (a + b) * (a + b) * diff * diff).sqrt();
    Ok((2.0 / delta * ((a + b) * (a + b) - delta / 4.0 + mu)).max(0.0))
}

/// Linear entropy of the steady state in closed form.
pub fn mapped_global_entropy(cm: &StandardFormCM) -> Result<f64> {
    let (_, delta) = normalizers(cm)?;
    let (a, b) = (cm.a, cm.b);
    let xi2 = (a + b) * (a + b) + 4.0 * (cm.c_plus * cm.c_plus + cm.c_minus * cm.c_minus);
    Ok(1.0
        - 1.0 / (3.0 * a * a)
        - 1.0 / (3.0 * b * b)
        - 16.0 * (a + b) * (a + b) * xi2 / (3.0 * delta * delta))
}

/// Qubit marginal entropy produced by a mode of marginal entropy `x`:
/// `x (2 - x)`, i.e. `1 - 1/a^2` for `x = 1 - 1/a`.
pub fn mapped_marginal_entropy(marginal_field_entropy: f64) -> f64 {
    let x = marginal_field_entropy;
    x * (2.0 - x)
}

/// Time derivative of the X-block coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XDerivative {
    pub populations: [f64; 4],
    pub coherence_outer: f64,
    pub coherence_inner: f64,
}

impl XDerivative {
    pub fn max_abs(&self) -> f64 {
        self.populations
            .iter()
            .chain([self.coherence_outer, self.coherence_inner].iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// Closed equations of motion for an X state with real coherences, in
/// dimensionless time.
///
/// The populations couple to the coherences only through `c+ - c-`
/// (outer) and `c+ + c-` (inner); imaginary parts of the coherences, which
/// are not represented, decay independently at rate `2(a+b)`.
pub fn bloch_rhs(x: &XState, cm: &StandardFormCM) -> XDerivative {
    let (a, b) = (cm.a, cm.b);
    let sum = cm.c_plus + cm.c_minus;
    let diff = cm.c_plus - cm.c_minus;
    let [p00, p01, p10, p11] = x.populations;
    let (xo, xi) = (x.coherence_outer, x.coherence_inner);
    // coherence drive common to all populations
    let drive = 2.0 * (sum * xi - diff * xo);
    let dp00 = -2.0 * (a + b + 2.0) * p00 + 2.0 * (b - 1.0) * p01 + 2.0 * (a - 1.0) * p10 + drive;
    let dp01 = 2.0 * (b + 1.0) * p00 - 2.0 * (a + b) * p01 + 2.0 * (a - 1.0) * p11 - drive;
    let dp10 = 2.0 * (a + 1.0) * p00 - 2.0 * (a + b) * p10 + 2.0 * (b - 1.0) * p11 - drive;
    let dp11 = 2.0 * (a + 1.0) * p01 + 2.0 * (b + 1.0) * p10 - 2.0 * (a + b - 2.0) * p11 + drive;
    let parity = p00 - p01 - p10 + p11;
    XDerivative {
        populations: [dp00, dp01, dp10, dp11],
        coherence_outer: -2.0 * (a + b) * xo - diff * parity,
        coherence_inner: -2.0 * (a + b) * xi + sum * parity,
    }
}
