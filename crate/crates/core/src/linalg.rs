// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Small dense linear-algebra helpers on complex matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub(crate) type CMatrix = DMatrix<Complex64>;

/// Largest entrywise modulus of `a - a*`.
pub(crate) fn hermitian_residual(a: &CMatrix) -> f64 {
    let d = a.nrows();
    let mut worst = 0.0f64;
    for r in 0..d {
        for c in r..d {
            worst = worst.max((a[(r, c)] - a[(c, r)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn max_abs_entry(a: &CMatrix) -> f64 {
    a.iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Hermitian part `(a + a*)/2`.
pub(crate) fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Eigendecomposition of the Hermitian part of `a`.
pub(crate) fn hermitian_eigen(a: &CMatrix) -> (DVector<f64>, CMatrix) {
    let eig = SymmetricEigen::new(hermitian_part(a));
    (eig.eigenvalues, eig.eigenvectors)
}

pub(crate) fn hermitian_eigenvalues(a: &CMatrix) -> DVector<f64> {
    hermitian_part(a).symmetric_eigenvalues()
}

pub(crate) fn min_eigenvalue(a: &CMatrix) -> f64 {
    hermitian_eigenvalues(a).iter().copied().fold(f64::INFINITY, f64::min)
}

pub(crate) fn max_eigenvalue(a: &CMatrix) -> f64 {
    hermitian_eigenvalues(a).iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Applies `f` to the spectrum of the Hermitian part of `a`.
pub(crate) fn hermitian_function(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(a);
    let d = vals.len();
    let mut scaled = vecs.clone();
    for c in 0..d {
        let w = Complex64::new(f(vals[c]), 0.0);
        for r in 0..d {
            scaled[(r, c)] *= w;
        }
    }
    scaled * vecs.adjoint()
}

/// Singular values, using the eigenvalues when the input is Hermitian.
pub(crate) fn singular_values(a: &CMatrix) -> Vec<f64> {
    let scale = max_abs_entry(a).max(1.0);
    if hermitian_residual(a) <= 1e-13 * scale {
        hermitian_eigenvalues(a).iter().map(|v| v.abs()).collect()
    } else {
        a.clone().svd(false, false).singular_values.iter().copied().collect()
    }
}

pub(crate) fn operator_norm(a: &CMatrix) -> f64 {
    singular_values(a).into_iter().fold(0.0, f64::max)
}

/// Kronecker product of a sequence of square factors, leftmost factor outermost.
pub(crate) fn kron_all<'a>(factors: impl IntoIterator<Item = &'a CMatrix>) -> CMatrix {
    let mut acc = CMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for f in factors {
        acc = acc.kronecker(f);
    }
    acc
}

/// Trace of `a* b`.
pub(crate) fn trace_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}
