// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit density matrices in the basis `{|00>, |01>, |10>, |11>}`,
//! qubit A being the left tensor factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c, hermitian_eigenvalues2, hermitian_eigenvalues4, hermiticity_defect4, trace4, CMatrix2,
    CMatrix4,
};

/// Default tolerances for density-matrix validation.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Index pairs of the entries outside the X pattern.
pub const ANTI_X_ENTRIES: [(usize, usize); 8] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 3),
    (2, 0),
    (2, 3),
    (3, 1),
    (3, 2),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    matrix: CMatrix4,
}

impl TwoQubitState {
    /// Validated construction with the default tolerances.
    pub fn new(matrix: CMatrix4) -> Result<Self> {
        Self::with_tolerance(matrix, HERMITIAN_TOL, TRACE_TOL, POSITIVITY_TOL)
    }

    pub fn with_tolerance(
        matrix: CMatrix4,
        hermitian_tol: f64,
        trace_tol: f64,
        positivity_tol: f64,
    ) -> Result<Self> {
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        let herm = hermiticity_defect4(&matrix);
        if herm > hermitian_tol {
            return Err(Error::InvalidState(format!("not Hermitian (defect {herm:e})")));
        }
        let tr = trace4(&matrix);
        if (tr - c(1.0, 0.0)).norm() > trace_tol {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min_eig = hermitian_eigenvalues4(&matrix)[0];
        if min_eig < -positivity_tol {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(TwoQubitState { matrix })
    }

    /// Wraps a matrix without checks. Callers guarantee it is a density matrix
    /// up to integrator round-off.
    pub(crate) fn from_matrix_unchecked(matrix: CMatrix4) -> Self {
        TwoQubitState { matrix }
    }

    pub fn matrix(&self) -> &CMatrix4 {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix4 {
        self.matrix
    }

    /// `|psi><psi|` for a normalized ket.
    pub fn pure(ket: [num_complex::Complex64; 4]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!("ket norm^2 = {norm}")));
        }
        Ok(TwoQubitState {
            matrix: CMatrix4::from_fn(|i, j| ket[i] * ket[j].conj()),
        })
    }

    /// Computational basis projector `|k><k|`, `k` in `0..4`.
    pub fn basis(k: usize) -> Self {
        let mut m = CMatrix4::zeros();
        m[(k, k)] = c(1.0, 0.0);
        TwoQubitState { matrix: m }
    }

    pub fn maximally_mixed() -> Self {
        TwoQubitState {
            matrix: CMatrix4::identity() * c(0.25, 0.0),
        }
    }

    /// `|Phi-> = (|00> - |11>)/sqrt 2`.
    pub fn phi_minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::pure([c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-h, 0.0)])
            .expect("normalized")
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues4(&self.matrix)
    }

    pub fn purity(&self) -> f64 {
        // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest modulus among the entries outside the X pattern.
    pub fn anti_x_leak(&self) -> f64 {
        anti_x_leak(&self.matrix)
    }
}

pub fn anti_x_leak(m: &CMatrix4) -> f64 {
    ANTI_X_ENTRIES
        .iter()
        .map(|&(i, j)| m[(i, j)].norm())
        .fold(0.0, f64::max)
}

/// Two-qubit state with nonzero entries only on the diagonal and the
/// anti-diagonal, with real coherences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    /// `(rho_00,00, rho_01,01, rho_10,10, rho_11,11)`.
    pub populations: [f64; 4],
    /// `rho_00,11`.
    pub coherence_outer: f64,
    /// `rho_01,10`.
    pub coherence_inner: f64,
}

impl XState {
    pub fn new(populations: [f64; 4], coherence_outer: f64, coherence_inner: f64) -> Self {
        XState {
            populations,
            coherence_outer,
            coherence_inner,
        }
    }

    /// Checks normalization and positivity of the two 2x2 blocks.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let [p00, p01, p10, p11] = self.populations;
        let vals = [p00, p01, p10, p11, self.coherence_outer, self.coherence_inner];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidState("non-finite X-state entry".into()));
        }
        let total: f64 = self.populations.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("populations sum to {total}")));
        }
        if self.populations.iter().any(|&p| p < -tol) {
            return Err(Error::InvalidState("negative population".into()));
        }
        if self.coherence_outer.powi(2) > p00 * p11 + tol {
            return Err(Error::InvalidState("outer block not positive".into()));
        }
        if self.coherence_inner.powi(2) > p01 * p10 + tol {
            return Err(Error::InvalidState("inner block not positive".into()));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> CMatrix4 {
        let [p00, p01, p10, p11] = self.populations;
        let mut m = CMatrix4::zeros();
        m[(0, 0)] = c(p00, 0.0);
        m[(1, 1)] = c(p01, 0.0);
        m[(2, 2)] = c(p10, 0.0);
        m[(3, 3)] = c(p11, 0.0);
        m[(0, 3)] = c(self.coherence_outer, 0.0);
        m[(3, 0)] = c(self.coherence_outer, 0.0);
        m[(1, 2)] = c(self.coherence_inner, 0.0);
        m[(2, 1)] = c(self.coherence_inner, 0.0);
        m
    }

    /// Embedding into a full density matrix (validated).
    pub fn to_state(&self) -> Result<TwoQubitState> {
        TwoQubitState::new(self.to_matrix())
    }

    /// Reads the X entries of a density matrix, dropping everything else.
    /// Imaginary parts of the coherences are discarded.
    pub fn from_matrix(m: &CMatrix4) -> XState {
        XState {
            populations: [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re],
            coherence_outer: m[(0, 3)].re,
            coherence_inner: m[(1, 2)].re,
        }
    }

    pub fn purity(&self) -> f64 {
        self.populations.iter().map(|p| p * p).sum::<f64>()
            + 2.0 * (self.coherence_outer.powi(2) + self.coherence_inner.powi(2))
    }

    /// Negativity from the two 2x2 blocks of the partial transpose.
    ///
    /// Partial transposition moves the outer coherence into the
    /// `{|01>, |10>}` block and the inner one into `{|00>, |11>}`.
    pub fn negativity(&self) -> f64 {
        let [p00, p01, p10, p11] = self.populations;
        let block_min = |p: f64, q: f64, x: f64| {
            0.5 * (p + q) - (0.25 * (p - q) * (p - q) + x * x).sqrt()
        };
        let m1 = block_min(p00, p11, self.coherence_inner);
        let m2 = block_min(p01, p10, self.coherence_outer);
        2.0 * ((-m1).max(0.0) + (-m2).max(0.0))
    }
}

/// Partial transpose with respect to qubit A.
pub fn partial_transpose_a(m: &CMatrix4) -> CMatrix4 {
    // rho^{T_A}_{(ij),(kl)} = rho_{(kj),(il)}
    CMatrix4::from_fn(|r, s| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (s / 2, s % 2);
        m[(2 * k + j, 2 * i + l)]
    })
}

/// Partial transpose with respect to qubit B.
pub fn partial_transpose_b(m: &CMatrix4) -> CMatrix4 {
    CMatrix4::from_fn(|r, s| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (s / 2, s % 2);
        m[(2 * i + l, 2 * k + j)]
    })
}

/// `max{0, ||rho^{T_A}||_1 - 1}`, evaluated as twice the magnitude of the
/// negative part of the raw spectrum.
pub fn negativity(rho: &TwoQubitState) -> f64 {
    negativity_of_matrix(rho.matrix())
}

pub(crate) fn negativity_of_matrix(m: &CMatrix4) -> f64 {
    let eigs = hermitian_eigenvalues4(&partial_transpose_a(m));
    let neg: f64 = eigs.iter().filter(|&&v| v < 0.0).map(|v| -v).sum();
    (2.0 * neg).max(0.0)
}

/// `[D/(D-1)] (1 - Tr rho^2)` with `D = 4`.
pub fn linear_entropy(rho: &TwoQubitState) -> f64 {
    4.0 / 3.0 * (1.0 - rho.purity())
}

/// `2 (1 - Tr rho^2)` for a single-qubit density matrix.
pub fn linear_entropy_single(rho: &CMatrix2) -> f64 {
    let purity: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
    2.0 * (1.0 - purity)
}

/// Reduced states `(rho_A, rho_B)`.
pub fn marginals(rho: &TwoQubitState) -> (CMatrix2, CMatrix2) {
    let m = rho.matrix();
    let rho_a = CMatrix2::from_fn(|i, k| m[(2 * i, 2 * k)] + m[(2 * i + 1, 2 * k + 1)]);
    let rho_b = CMatrix2::from_fn(|j, l| m[(j, l)] + m[(2 + j, 2 + l)]);
    (rho_a, rho_b)
}

/// Eigenvalues of a single-qubit density matrix.
pub fn single_qubit_eigenvalues(rho: &CMatrix2) -> [f64; 2] {
    hermitian_eigenvalues2(rho)
}

/// `p |Phi-><Phi-| + (1 - p) I/4`.
pub fn werner(p: f64) -> Result<TwoQubitState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("Werner weight {p} outside [0, 1]")));
    }
    let bell = TwoQubitState::phi_minus();
    let m = bell.matrix() * c(p, 0.0) + CMatrix4::identity() * c(0.25 * (1.0 - p), 0.0);
    Ok(TwoQubitState::from_matrix_unchecked(m))
}

/// `[(g-1)|01><01| + (g+1)|11><11|] / (2g)`, the least mixed mapped states at
/// field purity `1/g`.
pub fn product_boundary_state(g: f64) -> Result<TwoQubitState> {
    if !(g >= 1.0) || !g.is_finite() {
        return Err(Error::Domain(format!("g = {g} must be a finite value >= 1")));
    }
    let mut m = CMatrix4::zeros();
    m[(1, 1)] = c((g - 1.0) / (2.0 * g), 0.0);
    m[(3, 3)] = c((g + 1.0) / (2.0 * g), 0.0);
    Ok(TwoQubitState::from_matrix_unchecked(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn sample_x() -> XState {
        XState::new([0.125, 0.125, 0.125, 0.625], -(2f64.sqrt()) / 8.0, 0.0)
    }

    #[test]
    fn negativity_examples() {
        assert_abs_diff_eq!(negativity(&TwoQubitState::phi_minus()), 1.0, epsilon = 1e-12);
        // Werner partial transpose: eigenvalues (1+p)/4 (x3) and (1-3p)/4
        assert_abs_diff_eq!(negativity(&werner(0.4).unwrap()), 0.1, epsilon = 1e-12);
        let x = sample_x();
        let expected = (2f64.sqrt() - 1.0) / 4.0;
        assert_abs_diff_eq!(negativity(&x.to_state().unwrap()), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(x.negativity(), expected, epsilon = 1e-15);
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(linear_entropy(&TwoQubitState::basis(2)), 0.0);
        assert_abs_diff_eq!(linear_entropy(&TwoQubitState::maximally_mixed()), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(linear_entropy(&sample_x().to_state().unwrap()), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn marginal_examples() {
        let (a, b) = marginals(&TwoQubitState::phi_minus());
        let half = CMatrix2::identity() * c(0.5, 0.0);
        assert!((a - half).norm() < 1e-15 && (b - half).norm() < 1e-15);

        let (a, b) = marginals(&TwoQubitState::basis(1));
        assert_eq!(a[(0, 0)].re, 1.0);
        assert_eq!(b[(1, 1)].re, 1.0);

        let tms = XState::new([0.25, 0.0, 0.0, 0.75], -(3f64.sqrt()) / 4.0, 0.0);
        let (a, b) = marginals(&tms.to_state().unwrap());
        for m in [a, b] {
            assert_abs_diff_eq!(m[(0, 0)].re, 0.25, epsilon = 1e-15);
            assert_abs_diff_eq!(m[(1, 1)].re, 0.75, epsilon = 1e-15);
            assert_abs_diff_eq!(linear_entropy_single(&m), 0.75, epsilon = 1e-15);
        }
    }

    #[test]
    fn werner_examples() {
        let w = werner(1.0).unwrap();
        assert_abs_diff_eq!(negativity(&w), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(linear_entropy(&w), 0.0, epsilon = 1e-12);
        let w = werner(0.0).unwrap();
        assert_eq!(negativity(&w), 0.0);
        assert_abs_diff_eq!(linear_entropy(&w), 1.0, epsilon = 1e-15);
        let w = werner(0.5).unwrap();
        assert_abs_diff_eq!(negativity(&w), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(linear_entropy(&w), 0.75, epsilon = 1e-15);
        assert!(matches!(werner(1.2), Err(Error::Domain(_))));
    }

    #[test]
    fn werner_closed_forms_on_grid() {
        for k in 0..100 {
            let p = k as f64 / 99.0;
            let w = werner(p).unwrap();
            TwoQubitState::new(*w.matrix()).unwrap();
            assert_abs_diff_eq!(negativity(&w), ((3.0 * p - 1.0) / 2.0).max(0.0), epsilon = 1e-12);
            assert_abs_diff_eq!(linear_entropy(&w), 1.0 - p * p, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_boundary_examples() {
        let s = product_boundary_state(1.0).unwrap();
        assert_eq!(s.matrix()[(3, 3)].re, 1.0);
        assert_abs_diff_eq!(linear_entropy(&s), 0.0);
        let s = product_boundary_state(2.0).unwrap();
        assert_abs_diff_eq!(s.matrix()[(1, 1)].re, 0.25);
        assert_abs_diff_eq!(s.matrix()[(3, 3)].re, 0.75);
        assert_abs_diff_eq!(linear_entropy(&s), 0.5, epsilon = 1e-15);
        assert_eq!(negativity(&s), 0.0);
        let s = product_boundary_state(1e9).unwrap();
        assert_abs_diff_eq!(linear_entropy(&s), 2.0 / 3.0, epsilon = 1e-9);
        assert!(product_boundary_state(0.5).is_err());
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        let mut m = *TwoQubitState::maximally_mixed().matrix();
        m[(0, 1)] = c(0.1, 0.0);
        assert!(TwoQubitState::new(m).is_err());
        let m = CMatrix4::identity() * c(0.3, 0.0);
        assert!(TwoQubitState::new(m).is_err());
        let mut m = CMatrix4::zeros();
        m[(0, 0)] = c(1.5, 0.0);
        m[(1, 1)] = c(-0.5, 0.0);
        assert!(TwoQubitState::new(m).is_err());
        assert!(XState::new([0.5, 0.0, 0.0, 0.5], 0.6, 0.0).validate(1e-10).is_err());
    }

    fn random_state(seed: [f64; 32]) -> TwoQubitState {
        // rho = A A^dagger / Tr(A A^dagger)
        let a = CMatrix4::from_fn(|i, j| c(seed[4 * i + j], seed[16 + 4 * i + j]));
        let m = a * a.adjoint();
        let tr = trace4(&m).re;
        TwoQubitState::new(m / c(tr, 0.0)).unwrap()
    }

    fn random_ket(seed: [f64; 8]) -> [num_complex::Complex64; 4] {
        let mut k = [c(0.0, 0.0); 4];
        for i in 0..4 {
            k[i] = c(seed[2 * i], seed[2 * i + 1]);
        }
        let n: f64 = k.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        k.map(|z| z / n)
    }

    proptest! {
        #[test]
        fn transposing_either_qubit_gives_same_negativity(seed in prop::array::uniform32(-1.0f64..1.0)) {
            let rho = random_state(seed);
            let eig_b = hermitian_eigenvalues4(&partial_transpose_b(rho.matrix()));
            let neg_b = 2.0 * eig_b.iter().filter(|&&v| v < 0.0).map(|v| -v).sum::<f64>();
            prop_assert!((negativity(&rho) - neg_b).abs() < 1e-12);
        }

        #[test]
        fn x_block_negativity_matches_full(
            pops in prop::array::uniform4(0.01f64..1.0),
            u in -1.0f64..1.0,
            v in -1.0f64..1.0,
        ) {
            let total: f64 = pops.iter().sum();
            let p = pops.map(|x| x / total);
            let x = XState::new(p, u * (p[0] * p[3]).sqrt(), v * (p[1] * p[2]).sqrt());
            let full = negativity(&x.to_state().unwrap());
            prop_assert!((full - x.negativity()).abs() < 1e-12);
        }

        #[test]
        fn pure_state_marginals_have_equal_entropy(seed in prop::array::uniform8(-1.0f64..1.0)) {
            prop_assume!(seed.iter().any(|v| v.abs() > 1e-3));
            let rho = TwoQubitState::pure(random_ket(seed)).unwrap();
            let (a, b) = marginals(&rho);
            prop_assert!((linear_entropy_single(&a) - linear_entropy_single(&b)).abs() < 1e-10);
        }
    }
}
