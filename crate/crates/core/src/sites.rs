// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Site-local superoperators acting on dense 2^n x 2^n matrices.
//!
//! Basis index bit `n - 1 - j` carries qubit `j`, so qubit 0 is the leftmost
//! tensor factor.

use num_complex::Complex64;

use crate::linalg::CMatrix;

/// A single-qubit density matrix `[[w00, w01], [w10, w11]]`.
pub(crate) type Qubit2 = [[Complex64; 2]; 2];

pub(crate) const MAXIMALLY_MIXED: Qubit2 = [
    [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)],
];

#[inline]
pub(crate) fn site_bit(n: usize, j: usize) -> usize {
    1usize << (n - 1 - j)
}

/// `tr_j((ω_j ⊗ 1) x) ⊗ 1_j`: the conditional expectation onto operators
/// trivial at site `j`.
pub(crate) fn site_expectation(x: &CMatrix, n: usize, j: usize, omega: &Qubit2) -> CMatrix {
    let dim = x.nrows();
    let bit = site_bit(n, j);
    let mut out = CMatrix::zeros(dim, dim);
    for c in 0..dim {
        if c & bit != 0 {
            continue;
        }
        for r in 0..dim {
            if r & bit != 0 {
                continue;
            }
            // tr(ω X) = Σ_{a,b} ω_{ba} X_{ab} over the 2x2 block at site j.
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    let w = omega[b][a];
                    if w == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    acc += w * x[(r | (a * bit), c | (b * bit))];
                }
            }
            out[(r, c)] = acc;
            out[(r | bit, c | bit)] = acc;
        }
    }
    out
}

/// `x - E_j(x)`.
pub(crate) fn site_derivation(x: &CMatrix, n: usize, j: usize, omega: &Qubit2) -> CMatrix {
    x - site_expectation(x, n, j, omega)
}

/// `e^{-t} x + (1 - e^{-t}) E_j(x)`.
pub(crate) fn site_semigroup(x: &CMatrix, n: usize, j: usize, t: f64, omega: &Qubit2) -> CMatrix {
    let keep = (-t).exp();
    let e = site_expectation(x, n, j, omega);
    x * Complex64::new(keep, 0.0) + e * Complex64::new(1.0 - keep, 0.0)
}

/// Product of the site semigroups over all qubits.
pub(crate) fn full_semigroup(x: &CMatrix, n: usize, t: f64, omega: &Qubit2) -> CMatrix {
    (0..n).fold(x.clone(), |acc, j| site_semigroup(&acc, n, j, t, omega))
}

/// Product of the site semigroups over all qubits except `skip`.
pub(crate) fn semigroup_except(x: &CMatrix, n: usize, skip: usize, t: f64, omega: &Qubit2) -> CMatrix {
    (0..n)
        .filter(|&j| j != skip)
        .fold(x.clone(), |acc, j| site_semigroup(&acc, n, j, t, omega))
}

/// `Σ_j (x - E_j x)`.
pub(crate) fn generator(x: &CMatrix, n: usize, omega: &Qubit2) -> CMatrix {
    let mut out = x * Complex64::new(n as f64, 0.0);
    for j in 0..n {
        out -= site_expectation(x, n, j, omega);
    }
    out
}

/// Carré du champ `Γ(x) = (L(x*)x + x*L(x) - L(x*x)) / 2` for the generator above.
pub(crate) fn carre_du_champ(x: &CMatrix, n: usize, omega: &Qubit2) -> CMatrix {
    let xa = x.adjoint();
    let lx = generator(x, n, omega);
    let lxa = generator(&xa, n, omega);
    let lxx = generator(&(&xa * x), n, omega);
    (lxa * x + &xa * lx - lxx) * Complex64::new(0.5, 0.0)
}
