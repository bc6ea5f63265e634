// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! The depolarizing semigroup `P_t = e^{-tL}`, its generator `L = Σ_j d_j`,
//! the carré du champ `Γ`, and the semigroup lemmas as checkable predicates.
//!
//! On coefficients `P_t` multiplies `Â_s` by `e^{-t|s|}` and `L` by `|s|`.
//! Dense matrices are pushed through the same maps site by site, which is
//! also exact; no matrix exponential is involved anywhere.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::influence::d_j;
use crate::linalg;
use crate::pauli::{schatten_norm, to_dense, DenseOperator, FourierOperator};
use crate::sites::{self, MAXIMALLY_MIXED};
use crate::tolerance::Tolerances;

/// Result of one semigroup lemma check at one time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemigroupCheckReport {
    pub name: String,
    pub t: f64,
    /// Left-hand side; for operator orderings the operator norm of the smaller side.
    pub lhs: f64,
    /// Right-hand side; for operator orderings the operator norm of the larger side.
    pub rhs: f64,
    /// `rhs - lhs` for scalar checks, minimum eigenvalue of the difference for
    /// operator orderings.
    pub slack: f64,
    /// Absolute tolerance on the slack.
    pub tolerance: f64,
    pub satisfied: bool,
}

impl SemigroupCheckReport {
    fn new(name: &str, t: f64, lhs: f64, rhs: f64, slack: f64, tolerance: f64) -> Self {
        Self { name: name.into(), t, lhs, rhs, slack, tolerance, satisfied: slack >= -tolerance }
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || t.is_infinite() {
        return Err(Error::InvalidParameter(format!("time must be finite and nonnegative, got {t}")));
    }
    Ok(())
}

/// `P_t(A)`: multiplies `Â_s` by `e^{-t|s|}`.
pub fn apply_semigroup(f: &FourierOperator, t: f64) -> Result<FourierOperator> {
    check_time(t)?;
    Ok(f.multiplied(|s| (-t * s.weight() as f64).exp()))
}

/// `L(A) = Σ_j d_j(A)`: multiplies `Â_s` by `|s|`.
pub fn generator(f: &FourierOperator) -> FourierOperator {
    f.multiplied(|s| s.weight() as f64)
}

/// `P_t` applied to a dense matrix as the product of single-site maps.
pub fn apply_semigroup_dense(a: &DenseOperator, t: f64) -> Result<DenseOperator> {
    check_time(t)?;
    Ok(DenseOperator::from_parts(a.n(), sites::full_semigroup(a.matrix(), a.n(), t, &MAXIMALLY_MIXED)))
}

/// `L` applied to a dense matrix, `n A - Σ_j (tr_j(A)/2) ⊗ 1_j`.
pub fn generator_dense(a: &DenseOperator) -> DenseOperator {
    DenseOperator::from_parts(a.n(), sites::generator(a.matrix(), a.n(), &MAXIMALLY_MIXED))
}

/// `Γ(A) = (L(A*)A + A*L(A) - L(A*A)) / 2`.
pub fn carre_du_champ(a: &DenseOperator) -> DenseOperator {
    DenseOperator::from_parts(a.n(), sites::carre_du_champ(a.matrix(), a.n(), &MAXIMALLY_MIXED))
}

/// `Σ_j d_j(A)* d_j(A)`.
pub fn derivation_square_sum(a: &DenseOperator) -> DenseOperator {
    let n = a.n();
    let mut acc = linalg::CMatrix::zeros(a.dim(), a.dim());
    for j in 0..n {
        let dj = sites::site_derivation(a.matrix(), n, j, &MAXIMALLY_MIXED);
        acc += dj.adjoint() * &dj;
    }
    DenseOperator::from_parts(n, acc)
}

/// Hypercontractive exponent `p(t) = 1 + e^{-2t}`.
pub fn hypercontractive_exponent(t: f64) -> f64 {
    1.0 + (-2.0 * t).exp()
}

/// `‖P_t A‖₂ ≤ ‖A‖_{p(t)}`.
pub fn check_hypercontractivity(f: &FourierOperator, t: f64, tol: &Tolerances) -> Result<SemigroupCheckReport> {
    check_time(t)?;
    let lhs = apply_semigroup(f, t)?.norm2_squared().sqrt();
    let rhs = schatten_norm(&to_dense(f), hypercontractive_exponent(t))?.value;
    let scale = tol.inequality * (1.0 + rhs);
    Ok(SemigroupCheckReport::new("hypercontractivity", t, lhs, rhs, rhs - lhs, scale))
}

fn psd_tolerance(a: &DenseOperator, tol: &Tolerances) -> f64 {
    let norm = linalg::operator_norm(a.matrix());
    tol.psd * norm * norm
}

/// `Γ(P_t A) ⪯ e^{-t} P_t Γ(A)`.
pub fn check_gradient_estimate(a: &DenseOperator, t: f64, tol: &Tolerances) -> Result<SemigroupCheckReport> {
    let pta = apply_semigroup_dense(a, t)?;
    let left = carre_du_champ(&pta);
    let right = apply_semigroup_dense(&carre_du_champ(a), t)?.scaled(Complex64::new((-t).exp(), 0.0));
    let diff = right.difference(&left)?;
    Ok(SemigroupCheckReport::new(
        "gradient_estimate",
        t,
        linalg::operator_norm(left.matrix()),
        linalg::operator_norm(right.matrix()),
        diff.min_eigenvalue(),
        psd_tolerance(a, tol),
    ))
}

/// `Σ_j (d_j P_t A)*(d_j P_t A) ⪯ ‖A‖²/(e^t - 1)`, together with the per-qubit
/// corollary `‖d_j P_t A‖² ≤ ‖A‖²/(e^t - 1)`. The slack is the smaller of the two.
pub fn check_djpt_bound(a: &DenseOperator, t: f64, tol: &Tolerances) -> Result<SemigroupCheckReport> {
    if !(t > 0.0) || t.is_infinite() {
        return Err(Error::InvalidParameter(format!("time must be positive and finite, got {t}")));
    }
    let n = a.n();
    let norm = linalg::operator_norm(a.matrix());
    let bound = norm * norm / t.exp_m1();
    let pta = sites::full_semigroup(a.matrix(), n, t, &MAXIMALLY_MIXED);
    let mut sum = linalg::CMatrix::zeros(a.dim(), a.dim());
    let mut worst_single = 0.0f64;
    for j in 0..n {
        let dj = sites::site_derivation(&pta, n, j, &MAXIMALLY_MIXED);
        let single = linalg::operator_norm(&dj);
        worst_single = worst_single.max(single * single);
        sum += dj.adjoint() * &dj;
    }
    let top = linalg::max_eigenvalue(&sum).max(0.0);
    let slack = (bound - top).min(bound - worst_single);
    Ok(SemigroupCheckReport::new("djpt_bound", t, top, bound, slack, psd_tolerance(a, tol)))
}

/// `d_j P_t = P_t d_j` on coefficients; residual is the largest coefficient gap.
pub fn check_intertwining(f: &FourierOperator, t: f64, j: usize) -> Result<SemigroupCheckReport> {
    let left = d_j(&apply_semigroup(f, t)?, j)?;
    let right = apply_semigroup(&d_j(f, j)?, t)?;
    let residual = left.max_abs_diff(&right);
    Ok(SemigroupCheckReport::new("intertwining", t, residual, 0.0, -residual, 1e-14))
}

/// `‖d_j P_t A - P_t d_j A‖_∞` computed on dense matrices only.
pub fn intertwining_dense_residual(a: &DenseOperator, t: f64, j: usize) -> Result<f64> {
    check_time(t)?;
    if j >= a.n() {
        return Err(Error::QubitOutOfRange { index: j, n: a.n() });
    }
    let n = a.n();
    let left = sites::site_derivation(&sites::full_semigroup(a.matrix(), n, t, &MAXIMALLY_MIXED), n, j, &MAXIMALLY_MIXED);
    let right = sites::full_semigroup(&sites::site_derivation(a.matrix(), n, j, &MAXIMALLY_MIXED), n, t, &MAXIMALLY_MIXED);
    Ok(linalg::operator_norm(&(left - right)))
}

/// `‖A - P_t A‖₂² ≤ t Inf²(A)`.
pub fn check_smoothing(f: &FourierOperator, t: f64, tol: &Tolerances) -> Result<SemigroupCheckReport> {
    check_time(t)?;
    let mut lhs = 0.0;
    let mut inf2 = 0.0;
    for (s, c) in f.terms() {
        let w = s.weight() as f64;
        let gap = -(-t * w).exp_m1();
        lhs += gap * gap * c.norm_sqr();
        inf2 += w * c.norm_sqr();
    }
    let rhs = t * inf2;
    Ok(SemigroupCheckReport::new("smoothing", t, lhs, rhs, rhs - lhs, tol.inequality * (1.0 + rhs)))
}

/// `‖P_t A‖₂ ≤ e^{-t}‖A‖₂` for `tr(A) = 0`; the mean is removed first.
pub fn check_poincare_contraction(f: &FourierOperator, t: f64, tol: &Tolerances) -> Result<SemigroupCheckReport> {
    check_time(t)?;
    let centered = f.filtered(|s| !s.is_identity());
    let lhs = apply_semigroup(&centered, t)?.norm2_squared().sqrt();
    let rhs = (-t).exp() * centered.norm2_squared().sqrt();
    Ok(SemigroupCheckReport::new("poincare_contraction", t, lhs, rhs, rhs - lhs, tol.inequality * (1.0 + rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{pauli_matrix, PauliString};
    use approx::assert_abs_diff_eq;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn semigroup_on_paulis() {
        let id = FourierOperator::identity(2);
        assert_eq!(apply_semigroup(&id, 3.0).unwrap(), id);
        let xy = apply_semigroup(&FourierOperator::pauli(ps("12")), 0.3).unwrap();
        assert_abs_diff_eq!(xy.coeff(ps("12")).re, (-0.6f64).exp(), epsilon = 1e-15);
        let z = apply_semigroup(&FourierOperator::pauli(ps("3")), 1.0).unwrap();
        assert_abs_diff_eq!(z.coeff(ps("3")).re, (-1f64).exp(), epsilon = 1e-15);
        assert!(apply_semigroup(&id, -1.0).is_err());
    }

    #[test]
    fn generator_on_paulis() {
        assert_eq!(generator(&FourierOperator::identity(3)).nnz(), 0);
        let g = generator(&FourierOperator::pauli(ps("310")));
        assert_eq!(g.coeff(ps("310")).re, 2.0);
    }

    #[test]
    fn carre_du_champ_examples() {
        let g = carre_du_champ(&DenseOperator::identity(2));
        assert!(g.matrix().iter().all(|z| z.norm() < 1e-15));
        let g = carre_du_champ(&pauli_matrix(ps("3")));
        assert!(g.max_abs_diff(&DenseOperator::identity(1)) < 1e-15);
    }

    #[test]
    fn hypercontractivity_examples() {
        let tol = Tolerances::default();
        let z = FourierOperator::pauli(ps("3"));
        let r = check_hypercontractivity(&z, 0.0, &tol).unwrap();
        assert_abs_diff_eq!(r.lhs, r.rhs, epsilon = 1e-14);
        let r = check_hypercontractivity(&z, 1.0, &tol).unwrap();
        assert_abs_diff_eq!(r.lhs, (-1f64).exp(), epsilon = 1e-14);
        assert_abs_diff_eq!(r.rhs, 1.0, epsilon = 1e-14);
        assert!(r.satisfied);
    }

    #[test]
    fn gradient_estimate_closed_form() {
        let tol = Tolerances::default();
        let z = pauli_matrix(ps("3"));
        let r0 = check_gradient_estimate(&z, 0.0, &tol).unwrap();
        assert_abs_diff_eq!(r0.slack, 0.0, epsilon = 1e-14);
        for t in [0.1, 0.5, 1.0, 2.0] {
            let r = check_gradient_estimate(&z, t, &tol).unwrap();
            assert_abs_diff_eq!(r.slack, (-t).exp() - (-2.0 * t).exp(), epsilon = 1e-14);
        }
    }

    #[test]
    fn djpt_closed_form() {
        let tol = Tolerances::default();
        let r = check_djpt_bound(&DenseOperator::identity(2), 0.5, &tol).unwrap();
        assert!(r.satisfied);
        assert_abs_diff_eq!(r.lhs, 0.0, epsilon = 1e-15);
        let r = check_djpt_bound(&pauli_matrix(ps("3")), 2f64.ln(), &tol).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(r.rhs, 1.0, epsilon = 1e-14);
        assert!(check_djpt_bound(&pauli_matrix(ps("3")), 0.0, &tol).is_err());
    }

    #[test]
    fn intertwining_example() {
        let a = FourierOperator::pauli(ps("31"));
        let r = check_intertwining(&a, 0.7, 0).unwrap();
        assert_eq!(r.lhs, 0.0);
        let both = d_j(&apply_semigroup(&a, 0.7).unwrap(), 0).unwrap();
        assert_abs_diff_eq!(both.coeff(ps("31")).re, (-1.4f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn smoothing_closed_form() {
        let tol = Tolerances::default();
        let z = FourierOperator::pauli(ps("3"));
        assert_eq!(check_smoothing(&z, 0.0, &tol).unwrap().lhs, 0.0);
        for t in [0.01, 0.5, 3.0] {
            let r = check_smoothing(&z, t, &tol).unwrap();
            assert_abs_diff_eq!(r.lhs, (1.0 - (-t).exp()).powi(2), epsilon = 1e-15);
            assert!(r.satisfied);
        }
    }
}
