// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Junta extraction from influence data, with certified error and size.
//!
//! Given `A` and a target `ε ∈ (0, 2]`, the extraction averages out every
//! qubit whose `L¹` influence lies below a threshold `η` computed from the
//! total influences. The averaged operator `B` then satisfies
//! `‖A - B‖₂ ≤ ε` and depends on at most `k(ε)` qubits.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::influence::{profile_with_dense, InfluenceProfile};
use crate::linalg::{self, CMatrix};
use crate::pauli::{
    is_quantum_boolean, partial_average, support_of, to_dense, to_fourier, DenseOperator, FourierOperator,
};
use crate::tolerance::Tolerances;

/// Constants in the size bound `k(ε)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVariant {
    /// Exponent `48 Inf²/ε²`, logarithm of `2 Inf²/ε` (or `2√Inf²/ε`).
    General,
    /// Exponent `432 Inf²/ε²`, logarithm of `6 Inf²/ε` (or `6√Inf²/ε`), for
    /// the Boolean rounding run at `ε/3`.
    Boolean,
}

impl BoundVariant {
    fn constants(self) -> (f64, f64) {
        match self {
            Self::General => (48.0, 2.0),
            Self::Boolean => (432.0, 6.0),
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 2.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 2], got {eps}")));
    }
    Ok(())
}

/// Upper bound `k(ε)` on the number of qubits kept.
///
/// For `Inf² ≥ 1` this is `Inf¹² exp((c Inf²/ε²) log(m Inf²/ε))`; otherwise
/// `(Inf¹²/Inf²) exp((c Inf²/ε²) log(m √Inf²/ε))`, with `(c, m)` set by the
/// variant. Vanishing `Inf²` gives 0. The value may overflow to infinity.
pub fn junta_bound(inf1: f64, inf2: f64, eps: f64, variant: BoundVariant) -> Result<f64> {
    check_eps(eps)?;
    if !(inf1 >= 0.0 && inf2 >= 0.0) {
        return Err(Error::InvalidParameter("influences must be nonnegative".into()));
    }
    if inf2 == 0.0 {
        return Ok(0.0);
    }
    let (c, m) = variant.constants();
    let exponent = c * inf2 / (eps * eps);
    Ok(if inf2 >= 1.0 {
        inf1 * inf1 * (exponent * (m * inf2 / eps).ln()).exp()
    } else {
        inf1 * inf1 / inf2 * (exponent * (m * inf2.sqrt() / eps).ln()).exp()
    })
}

/// `α(t) = (1 - e^{-2t})/(1 + e^{-2t}) = tanh t`.
pub fn alpha_of(t: f64) -> f64 {
    t.tanh()
}

/// Relative margin below `η` required to average out a qubit.
///
/// Qubits whose influence equals `η` up to round-off are kept, so exact
/// juntas such as a dictator at `ε = 2` keep their active qubit.
pub const THRESHOLD_MARGIN: f64 = 1e-9;

/// Which branch of the extraction produced a [`JuntaResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionBranch {
    /// `Inf² = 0`: `A` is a multiple of the identity.
    Constant,
    /// `ε > 2√Inf²`: the mean alone is within `ε/2`.
    MeanSuffices,
    /// Threshold rule at the parameters `t`, `α(t)`, `η`.
    Threshold,
}

/// Output of [`friedgut_extract`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JuntaResult {
    pub eps: f64,
    /// Qubits averaged out.
    #[serde(rename = "T")]
    pub averaged: BTreeSet<usize>,
    /// Qubits kept; `k_actual` is their number.
    pub kept: BTreeSet<usize>,
    /// `2^{-|T|} tr_T(A) ⊗ 1_T` for `T = averaged`.
    #[serde(rename = "B")]
    pub junta: FourierOperator,
    pub error_l2: f64,
    pub k_actual: usize,
    pub k_bound: f64,
    /// Threshold on `Inf¹_j` in the units of `A`; absent outside the threshold branch.
    pub eta: Option<f64>,
    pub t: Option<f64>,
    pub alpha: Option<f64>,
    /// Factor `Inf²^{-1/2}` applied when `Inf² < 1`.
    pub lambda: f64,
    pub branch: ExtractionBranch,
    pub error_certified: bool,
    pub size_certified: bool,
    pub inf1_total: f64,
    pub inf2_total: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl JuntaResult {
    pub fn certified(&self) -> bool {
        self.error_certified && self.size_certified
    }
}

/// Averages out low-influence qubits; see the module documentation.
pub fn friedgut_extract(f: &FourierOperator, eps: f64) -> Result<JuntaResult> {
    let dense = to_dense(f);
    let prof = profile_with_dense(f, &dense);
    friedgut_extract_with_profile(f, &prof, eps)
}

/// [`friedgut_extract`] reusing a computed influence profile.
pub fn friedgut_extract_with_profile(f: &FourierOperator, prof: &InfluenceProfile, eps: f64) -> Result<JuntaResult> {
    check_eps(eps)?;
    let n = f.n();
    let inf1 = prof.total1;
    let inf2 = prof.total2;
    let k_bound = junta_bound(inf1, inf2, eps, BoundVariant::General)?;
    let all: Vec<usize> = (0..n).collect();
    let mut warnings = Vec::new();

    let (averaged, branch, eta, t, alpha, lambda): (Vec<usize>, _, _, _, _, f64) = if inf2 == 0.0 {
        (all.clone(), ExtractionBranch::Constant, None, None, None, 1.0)
    } else {
        let lambda = if inf2 < 1.0 { inf2.powf(-0.5) } else { 1.0 };
        let eps_s = lambda * eps;
        if eps_s > 2.0 {
            (all.clone(), ExtractionBranch::MeanSuffices, None, None, None, lambda)
        } else {
            let inf1_s = lambda * inf1;
            let inf2_s = lambda * lambda * inf2;
            let t = eps_s * eps_s / (16.0 * inf2_s);
            let mut alpha = alpha_of(t);
            if alpha < 1e-12 {
                warnings.push(format!("alpha(t) = {alpha:.3e} floored at 1e-12"));
                alpha = 1e-12;
            }
            let log_eta = (2.0 / alpha) * (eps_s / 2.0).ln() - inf1_s.ln() - ((1.0 - alpha) / alpha) * inf2_s.ln();
            // Compare λ·Inf¹_j against η in log space; the threshold can underflow.
            let cut = log_eta + (1.0 - THRESHOLD_MARGIN).ln();
            let averaged = (0..n)
                .filter(|&j| {
                    let v = lambda * prof.inf1[j];
                    v == 0.0 || v.ln() < cut
                })
                .collect();
            let eta = (log_eta.exp() / lambda, t, alpha);
            (averaged, ExtractionBranch::Threshold, Some(eta.0), Some(eta.1), Some(eta.2), lambda)
        }
    };

    let junta = partial_average(f, &averaged)?;
    let error_l2 = f.difference(&junta)?.norm2_squared().sqrt();
    let averaged: BTreeSet<usize> = averaged.into_iter().collect();
    let kept: BTreeSet<usize> = (0..n).filter(|j| !averaged.contains(j)).collect();
    let k_actual = kept.len();
    Ok(JuntaResult {
        eps,
        averaged,
        kept,
        junta,
        error_l2,
        k_actual,
        k_bound,
        eta,
        t,
        alpha,
        lambda,
        branch,
        error_certified: error_l2 <= eps * (1.0 + 1e-12),
        size_certified: (k_actual as f64) <= k_bound * (1.0 + 1e-12),
        inf1_total: inf1,
        inf2_total: inf2,
        warnings,
    })
}

/// `sgn(B)` by spectral calculus, with its distance to `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignRounding {
    pub operator: DenseOperator,
    /// `‖B - sgn(B)‖₂`.
    pub distance: f64,
    /// `‖B² - 1‖₂`, which dominates `distance`.
    pub square_defect: f64,
}

impl SignRounding {
    pub fn bound_holds(&self) -> bool {
        self.distance <= self.square_defect * (1.0 + 1e-12) + 1e-13
    }
}

fn normalized_frobenius(m: &CMatrix) -> f64 {
    (m.iter().map(|z| z.norm_sqr()).sum::<f64>() / m.nrows() as f64).sqrt()
}

/// `sgn(λ) = 1` for `λ > 0` and `-1` for `λ ≤ 0`, with `|λ| < zero_eigenvalue`
/// counted as 0.
pub fn sign_round(b: &DenseOperator, tol: &Tolerances) -> Result<SignRounding> {
    let herm = b.hermitian_residual();
    let scale = linalg::max_abs_entry(b.matrix()).max(1.0);
    if herm > tol.boolean * scale {
        return Err(Error::NotHermitian(herm));
    }
    let z = tol.zero_eigenvalue;
    let s = linalg::hermitian_function(b.matrix(), |l| if l > z { 1.0 } else { -1.0 });
    let s = linalg::hermitian_part(&s);
    let d = b.dim();
    let distance = normalized_frobenius(&(b.matrix() - &s));
    let square_defect = normalized_frobenius(&(b.matrix() * b.matrix() - CMatrix::identity(d, d)));
    Ok(SignRounding { operator: DenseOperator::from_parts(b.n(), s), distance, square_defect })
}

/// Output of [`boolean_junta`].
#[derive(Clone, Debug, PartialEq)]
pub struct BooleanJunta {
    /// Quantum Boolean junta `sgn(B)`.
    pub operator: DenseOperator,
    /// The extraction at `ε/3` whose junta was rounded.
    pub extraction: JuntaResult,
    pub error_l2: f64,
    /// `k(ε)` with the Boolean constants.
    pub k_bound: f64,
    pub square_residual: f64,
    pub support_ok: bool,
    pub error_certified: bool,
}

/// Rounds the `ε/3` junta of a quantum Boolean `A` to a quantum Boolean junta `C`
/// with `‖A - C‖₂ ≤ ε`.
pub fn boolean_junta(a: &DenseOperator, eps: f64, tol: &Tolerances) -> Result<BooleanJunta> {
    check_eps(eps)?;
    let chk = is_quantum_boolean(a, tol.boolean);
    if !chk.is_boolean {
        return Err(Error::NotQuantumBoolean { hermitian: chk.hermitian_residual, square: chk.square_residual });
    }
    let f = to_fourier(a);
    let prof = profile_with_dense(&f, a);
    let extraction = friedgut_extract_with_profile(&f, &prof, eps / 3.0)?;
    let rounded = sign_round(&to_dense(&extraction.junta), tol)?;
    let c = rounded.operator;
    let error_l2 = normalized_frobenius(&(a.matrix() - c.matrix()));
    let d = c.dim();
    let square_residual = linalg::operator_norm(&(c.matrix() * c.matrix() - CMatrix::identity(d, d)));
    let support = support_of(&to_fourier(&c), tol.support);
    let support_ok = support.is_subset(&extraction.kept);
    let k_bound = junta_bound(prof.total1, prof.total2, eps, BoundVariant::Boolean)?;
    Ok(BooleanJunta {
        operator: c,
        error_certified: error_l2 <= eps * (1.0 + 1e-12),
        extraction,
        error_l2,
        k_bound,
        square_residual,
        support_ok,
    })
}

/// `‖P_tA - E_T(P_tA)‖₂²` against `(η Inf¹(A))^{α(t)} (Inf²(A))^{1-α(t)}` for a
/// set `T` of qubits whose influences are all at most `η`.
pub fn tail_lemma_sides(f: &FourierOperator, averaged: &[usize], t: f64, eta: f64) -> Result<(f64, f64)> {
    let pt = crate::semigroup::apply_semigroup(f, t)?;
    let lhs = pt.difference(&partial_average(&pt, averaged)?)?.norm2_squared();
    let prof = crate::influence::profile(f);
    let a = alpha_of(t);
    let rhs = (eta * prof.total1).powf(a) * prof.total2.powf(1.0 - a);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::dictator;
    use crate::pauli::{pauli_matrix, PauliString};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn real(c: f64) -> Complex64 {
        Complex64::new(c, 0.0)
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn bound_examples() {
        assert_abs_diff_eq!(junta_bound(1.0, 1.0, 2.0, BoundVariant::General).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(junta_bound(3.0, 0.0, 1.0, BoundVariant::General).unwrap(), 0.0);
        let expect = 4.0 * (48.0 * 2f64.ln()).exp();
        let got = junta_bound(2.0, 1.0, 1.0, BoundVariant::General).unwrap();
        assert!((got / expect - 1.0).abs() < 1e-12);
        assert!(junta_bound(1.0, 1.0, 0.0, BoundVariant::General).is_err());
        assert!(junta_bound(1.0, 1.0, 2.5, BoundVariant::General).is_err());
    }

    #[test]
    fn dictator_keeps_its_qubit() {
        let f = dictator(4, 0).unwrap();
        let r = friedgut_extract(&f, 2.0).unwrap();
        assert_eq!(r.kept, BTreeSet::from([0]));
        assert_eq!(r.junta, f);
        assert_eq!(r.error_l2, 0.0);
        assert_eq!(r.k_actual, 1);
        assert_abs_diff_eq!(r.k_bound, 1.0, epsilon = 1e-12);
        assert!(r.certified());
    }

    #[test]
    fn identity_is_constant_branch() {
        let r = friedgut_extract(&FourierOperator::identity(3), 0.5).unwrap();
        assert_eq!(r.branch, ExtractionBranch::Constant);
        assert_eq!(r.junta, FourierOperator::identity(3));
        assert_eq!(r.error_l2, 0.0);
        assert!(r.certified());
    }

    #[test]
    fn small_influence_uses_mean() {
        let f = FourierOperator::from_terms(2, [(ps("00"), real(0.9)), (ps("30"), real(0.1))]).unwrap();
        let r = friedgut_extract(&f, 0.5).unwrap();
        assert_eq!(r.branch, ExtractionBranch::MeanSuffices);
        assert_eq!(r.k_actual, 0);
        assert!(r.certified());
    }

    #[test]
    fn sign_examples() {
        let tol = Tolerances::default();
        let s = sign_round(&pauli_matrix(ps("3")).scaled(real(0.5)), &tol).unwrap();
        assert!(s.operator.max_abs_diff(&pauli_matrix(ps("3"))) < 1e-14);
        assert!(s.bound_holds());
        let s = sign_round(&DenseOperator::zeros(2), &tol).unwrap();
        assert!(s.operator.max_abs_diff(&DenseOperator::identity(2).scaled(real(-1.0))) < 1e-14);
        let b = DenseOperator::from_diagonal(2, &[1.2, -0.3, 0.9, -1.1]).unwrap();
        let s = sign_round(&b, &tol).unwrap();
        let expect = DenseOperator::from_diagonal(2, &[1.0, -1.0, 1.0, -1.0]).unwrap();
        assert!(s.operator.max_abs_diff(&expect) < 1e-14);
        assert!(s.bound_holds());
        let twice = sign_round(&s.operator, &tol).unwrap();
        assert!(twice.operator.max_abs_diff(&s.operator) < 1e-12);
    }

    #[test]
    fn sign_rejects_non_hermitian() {
        let mut m = DenseOperator::zeros(1).into_matrix();
        m[(0, 1)] = real(1.0);
        let b = DenseOperator::new(1, m).unwrap();
        assert!(sign_round(&b, &Tolerances::default()).is_err());
    }

    #[test]
    fn one_junta_is_reproduced() {
        let a = pauli_matrix(ps("100"));
        for eps in [0.25, 1.0, 2.0] {
            let r = boolean_junta(&a, eps, &Tolerances::default()).unwrap();
            assert!(r.operator.max_abs_diff(&a) < 1e-12);
            assert!(r.error_certified && r.support_ok);
        }
        assert!(boolean_junta(&a.scaled(real(0.5)), 1.0, &Tolerances::default()).is_err());
    }
}
