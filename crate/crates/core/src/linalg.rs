// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Small dense helpers over nalgebra's fixed-size matrices.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix4 = Matrix4<Complex64>;
pub type CMatrix2 = Matrix2<Complex64>;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Eigenvalues of a Hermitian 4x4 matrix in ascending order.
pub fn hermitian_eigenvalues4(m: &CMatrix4) -> [f64; 4] {
    let eig = SymmetricEigen::new(*m);
    let mut out = [0.0; 4];
    for (o, v) in out.iter_mut().zip(eig.eigenvalues.iter()) {
        *o = *v;
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Eigenvalues of a Hermitian 2x2 matrix in ascending order (closed form).
pub fn hermitian_eigenvalues2(m: &CMatrix2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - half_gap, mean + half_gap]
}

/// Largest absolute deviation from Hermiticity.
pub fn hermiticity_defect4(m: &CMatrix4) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn trace4(m: &CMatrix4) -> Complex64 {
    (0..4).map(|i| m[(i, i)]).sum()
}

/// Trace distance `||a - b||_1 / 2` between two Hermitian matrices.
pub fn trace_distance(a: &CMatrix4, b: &CMatrix4) -> f64 {
    let diff = a - b;
    0.5 * hermitian_eigenvalues4(&diff).iter().map(|v| v.abs()).sum::<f64>()
}
