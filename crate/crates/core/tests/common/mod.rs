// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference implementations written against the definitions only. Nothing
//! here calls the closed forms or the dissipator of the library.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix, DVector, Matrix4};
use num_complex::Complex64;

use cvqmap::StandardFormCM;

pub type C = Complex64;

pub fn cx(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn kron(a: &DMatrix<C>, b: &DMatrix<C>) -> DMatrix<C> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    DMatrix::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

fn paulis() -> (DMatrix<C>, DMatrix<C>, DMatrix<C>) {
    let id = DMatrix::<C>::identity(2, 2);
    let sx = DMatrix::from_row_slice(2, 2, &[cx(0., 0.), cx(1., 0.), cx(1., 0.), cx(0., 0.)]);
    let sy = DMatrix::from_row_slice(2, 2, &[cx(0., 0.), cx(0., -1.), cx(0., 1.), cx(0., 0.)]);
    (id, sx, sy)
}

/// `V12 + i Omega` written out entry by entry.
pub fn coefficient_matrix(cm: &StandardFormCM) -> DMatrix<C> {
    let (a, b, p, m) = (cm.a, cm.b, cm.c_plus, cm.c_minus);
    #[rustfmt::skip]
    let v = [
        a,  0., p,  0.,
        0., a,  0., m,
        p,  0., b,  0.,
        0., m,  0., b,
    ];
    #[rustfmt::skip]
    let omega = [
        0.,  1., 0.,  0.,
        -1., 0., 0.,  0.,
        0.,  0., 0.,  1.,
        0.,  0., -1., 0.,
    ];
    DMatrix::from_fn(4, 4, |i, j| cx(v[4 * i + j], omega[4 * i + j]))
}

/// Generator on row-major `vec(rho)`, built from
/// `sum_jk d_jk (O_j rho O_k - {O_k O_j, rho}/2)`.
pub fn generator(cm: &StandardFormCM, gamma: f64) -> DMatrix<C> {
    let (id, sx, sy) = paulis();
    let ops = [kron(&sx, &id), kron(&sy, &id), kron(&id, &sx), kron(&id, &sy)];
    let d = coefficient_matrix(cm) * cx(gamma, 0.0);
    let id4 = DMatrix::<C>::identity(4, 4);
    let mut l = DMatrix::<C>::zeros(16, 16);
    for j in 0..4 {
        for k in 0..4 {
            let dj = d[(j, k)];
            let ok_oj = &ops[k] * &ops[j];
            l += (kron(&ops[j], &ops[k].transpose())
                - (kron(&ok_oj, &id4) + kron(&id4, &ok_oj.transpose())) * cx(0.5, 0.0))
                * dj;
        }
    }
    l
}

/// Unit-trace null vector of the generator.
pub fn steady_state(cm: &StandardFormCM) -> Matrix4<C> {
    let mut l = generator(cm, 1.0);
    for col in 0..16 {
        l[(0, col)] = if col % 5 == 0 { cx(1.0, 0.0) } else { cx(0.0, 0.0) };
    }
    let mut rhs = DVector::<C>::zeros(16);
    rhs[0] = cx(1.0, 0.0);
    let v = l.lu().solve(&rhs).expect("generator has a one-dimensional kernel");
    Matrix4::from_fn(|i, j| v[4 * i + j])
}

pub fn hermitian_eigenvalues(m: &Matrix4<C>) -> Vec<f64> {
    let h = (m + m.adjoint()) * cx(0.5, 0.0);
    let mut e: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

pub fn partial_transpose(m: &Matrix4<C>) -> Matrix4<C> {
    // transpose of qubit B inside each 2x2 block
    Matrix4::from_fn(|r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        m[(2 * i + l, 2 * k + j)]
    })
}

/// `-2 x` sum of the negative eigenvalues of the partial transpose.
pub fn negativity(m: &Matrix4<C>) -> f64 {
    -2.0 * hermitian_eigenvalues(&partial_transpose(m))
        .into_iter()
        .filter(|e| *e < 0.0)
        .sum::<f64>()
}

pub fn linear_entropy(m: &Matrix4<C>) -> f64 {
    let purity = (m * m).trace().re;
    4.0 / 3.0 * (1.0 - purity)
}

/// Reduced state of qubit A.
pub fn marginal_a(m: &Matrix4<C>) -> nalgebra::Matrix2<C> {
    nalgebra::Matrix2::from_fn(|i, k| m[(2 * i, 2 * k)] + m[(2 * i + 1, 2 * k + 1)])
}

pub fn werner(p: f64) -> Matrix4<C> {
    let mut m = Matrix4::<C>::identity() * cx((1.0 - p) / 4.0, 0.0);
    let half = p / 2.0;
    m[(0, 0)] += cx(half, 0.0);
    m[(3, 3)] += cx(half, 0.0);
    m[(0, 3)] += cx(-half, 0.0);
    m[(3, 0)] += cx(-half, 0.0);
    m
}

pub fn trace_distance(a: &Matrix4<C>, b: &Matrix4<C>) -> f64 {
    0.5 * hermitian_eigenvalues(&(a - b)).iter().map(|e| e.abs()).sum::<f64>()
}

/// Uncertainty relation checked through Williamson's theorem: `V > 0` and
/// every symplectic eigenvalue at least 1.
pub fn satisfies_uncertainty(cm: &StandardFormCM, tol: f64) -> bool {
    let v = coefficient_matrix(cm).map(|z| z.re);
    if v.clone().cholesky().is_none() {
        return false;
    }
    let omega = coefficient_matrix(cm).map(|z| z.im);
    let nus = (&omega * &v).complex_eigenvalues();
    nus.iter().all(|z| z.norm() >= 1.0 - tol)
}

/// Standard-form Gaussian negativity from the partially transposed
/// symplectic spectrum.
pub fn gaussian_negativity(cm: &StandardFormCM) -> f64 {
    let flipped = StandardFormCM::new(cm.a, cm.b, cm.c_plus, -cm.c_minus);
    let v = coefficient_matrix(&flipped).map(|z| z.re);
    let omega = coefficient_matrix(&flipped).map(|z| z.im);
    let nu = (&omega * &v)
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    ((1.0 - nu) / nu).max(0.0)
}
