// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Functional inequalities for operators on qubits, evaluated and reported.
//!
//! Each check evaluates both sides with the unspecified universal constant
//! set to 1 and reports the implied constant `lhs / rhs`. Checks whose
//! constant is explicit also record whether that constant suffices.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::influence::{l1_influence_dense, l2_influence_dense};
use crate::linalg;
use crate::pauli::{is_quantum_boolean, schatten_from_singular_values, DenseOperator};
use crate::semigroup::{carre_du_champ, derivation_square_sum};
use crate::tolerance::Tolerances;

/// One evaluated inequality `lhs ≤ C · rhs_without_constant`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub n: usize,
    pub lhs: f64,
    pub rhs_without_constant: f64,
    /// `lhs / rhs_without_constant`; absent when the right side vanishes.
    pub implied_constant: Option<f64>,
    /// Smallest `C ≥ 0` with `lhs ≤ C · rhs`; infinite when `rhs = 0 < lhs`.
    pub satisfied_at: f64,
    /// The right side vanishes, so no constant is measured.
    pub degenerate: bool,
    /// Explicit constant of the statement, when it has one.
    pub constant: Option<f64>,
    /// Whether `lhs ≤ constant · rhs` within tolerance, when `constant` is set.
    pub satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ensemble: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub extra: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl InequalityReport {
    pub fn new(name: &str, n: usize, lhs: f64, rhs: f64) -> Self {
        let degenerate = rhs <= 0.0;
        let implied_constant = if degenerate { None } else { Some(lhs / rhs) };
        let satisfied_at = match implied_constant {
            Some(c) => c.max(0.0),
            None if lhs <= 0.0 => 0.0,
            None => f64::INFINITY,
        };
        Self {
            name: name.into(),
            n,
            lhs,
            rhs_without_constant: rhs,
            implied_constant,
            satisfied_at,
            degenerate,
            constant: None,
            satisfied: None,
            seed: None,
            ensemble: None,
            extra: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Records an explicit constant and whether it suffices.
    pub fn with_constant(mut self, c: f64, tol: f64) -> Self {
        self.constant = Some(c);
        self.satisfied = Some(self.holds_with(c, tol));
        self
    }

    /// `lhs ≤ c · rhs + tol · (1 + |c · rhs|)`.
    pub fn holds_with(&self, c: f64, tol: f64) -> bool {
        let bound = c * self.rhs_without_constant;
        let slack = if tol > 0.0 { tol * (1.0 + bound.abs()) } else { 0.0 };
        self.lhs <= bound + slack
    }

    pub fn with_metadata(mut self, seed: Option<u64>, ensemble: Option<&str>) -> Self {
        self.seed = seed;
        self.ensemble = ensemble.map(str::to_string);
        self
    }

    fn extra(mut self, key: &str, value: f64) -> Self {
        self.extra.insert(key.into(), value);
        self
    }
}

fn trace_norm(m: &linalg::CMatrix) -> f64 {
    schatten_from_singular_values(&linalg::singular_values(m), 1.0)
}

/// `‖M^{1/2}‖₁` for a PSD matrix `M`, clamping round-off negatives to zero.
fn sqrt_trace_norm(m: &linalg::CMatrix) -> f64 {
    let vals = linalg::hermitian_eigenvalues(m);
    vals.iter().map(|v| v.max(0.0).sqrt()).sum::<f64>() / vals.len() as f64
}

fn l1_influences(a: &DenseOperator) -> Vec<f64> {
    (0..a.n()).map(|j| l1_influence_dense(a, j)).collect()
}

/// `‖A - 2^{-n}tr(A)‖₁ ≤ π Inf¹(A)`.
pub fn poincare_l1(a: &DenseOperator, tol: &Tolerances) -> InequalityReport {
    let lhs = trace_norm(a.centered().matrix());
    let inf1: f64 = l1_influences(a).iter().sum();
    InequalityReport::new("poincare_l1", a.n(), lhs, PI * inf1)
        .with_constant(1.0, tol.inequality)
        .extra("inf1", inf1)
}

/// The chain `‖A - 2^{-n}tr(A)‖₁ ≤ π ‖(Σ_j d_j(A)* d_j(A))^{1/2}‖₁ ≤ √2 π ‖Γ(A)^{1/2}‖₁`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrongPoincareReport {
    /// First link, with `rhs_without_constant = π · middle`.
    pub report: InequalityReport,
    pub middle: f64,
    pub right: f64,
    pub first_link: bool,
    pub second_link: bool,
}

impl StrongPoincareReport {
    pub fn chain_holds(&self) -> bool {
        self.first_link && self.second_link
    }
}

pub fn strong_poincare_l1(a: &DenseOperator, tol: &Tolerances) -> StrongPoincareReport {
    let lhs = trace_norm(a.centered().matrix());
    let middle = sqrt_trace_norm(derivation_square_sum(a).matrix());
    let right = sqrt_trace_norm(carre_du_champ(a).matrix());
    let t = tol.inequality;
    let first_link = lhs <= PI * middle + t * (1.0 + PI * middle);
    let second_link = PI * middle <= SQRT_2 * PI * right + t * (1.0 + SQRT_2 * PI * right);
    let mut report = InequalityReport::new("strong_poincare_l1", a.n(), lhs, PI * middle)
        .extra("middle", middle)
        .extra("right", right)
        .extra("sqrt2_pi_right", SQRT_2 * PI * right);
    report.constant = Some(1.0);
    report.satisfied = Some(first_link && second_link);
    StrongPoincareReport { report, middle, right, first_link, second_link }
}

/// `max(log x, 0)`.
pub fn log_plus(x: f64) -> f64 {
    x.ln().max(0.0)
}

/// `a(1 + a) / (1 + log⁺(1/a))^{1/2}`, with value 0 at `a = 0`.
pub fn talagrand_term(a: f64) -> f64 {
    if a <= 0.0 {
        return 0.0;
    }
    a * (1.0 + a) / (1.0 + log_plus(1.0 / a)).sqrt()
}

/// Rescales to `‖A‖ ≤ 1` when needed, returning the factor and a warning.
fn unit_ball(a: &DenseOperator) -> (DenseOperator, f64, Option<String>) {
    let norm = linalg::operator_norm(a.matrix());
    if norm > 1.0 + 1e-12 {
        let s = 1.0 / norm;
        let note = format!("operator norm {norm:.6} > 1; rescaled by {s:.6}");
        (a.scaled(num_complex::Complex64::new(s, 0.0)), s, Some(note))
    } else {
        (a.clone(), 1.0, None)
    }
}

fn normalized_variance(a: &DenseOperator) -> f64 {
    a.centered().matrix().iter().map(|z| z.norm_sqr()).sum::<f64>() / a.dim() as f64
}

/// `Var(A) ≤ C Σ_j ‖d_jA‖₁(1 + ‖d_jA‖₁) / (1 + log⁺(1/‖d_jA‖₁))^{1/2}` for `‖A‖ ≤ 1`.
pub fn talagrand_l1(a: &DenseOperator) -> InequalityReport {
    let (a, scale, note) = unit_ball(a);
    let lhs = normalized_variance(&a);
    let rhs: f64 = l1_influences(&a).into_iter().map(talagrand_term).sum();
    let mut r = InequalityReport::new("talagrand_l1", a.n(), lhs, rhs).extra("scale", scale);
    r.notes.extend(note);
    r
}

/// Reading of `Inf²_j` inside the `L¹-L²` variance inequality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum L2InfluenceConvention {
    /// `Inf²_j = ‖d_jA‖₂`, the form the interpolation argument produces.
    #[default]
    Norm,
    /// `Inf²_j = ‖d_jA‖₂²`, the definition used for influences elsewhere.
    Squared,
}

/// `2e^{(2α-μ)₊/2λ} / (α(1 - e^{-1}))` at `λ = 1, α = 1, μ = 0`.
pub fn l1l2_prefactor() -> f64 {
    let (lambda, alpha, mu) = (1.0f64, 1.0f64, 0.0f64);
    2.0 * ((2.0 * alpha - mu).max(0.0) / (2.0 * lambda)).exp() / (alpha * (1.0 - (-1.0f64).exp()))
}

/// `Var(A) ≤ K Σ_j Inf²_j(A)² / (1 + log(Inf²_j(A)/Inf¹_j(A)))` with the
/// prefactor `K` of [`l1l2_prefactor`].
pub fn talagrand_l1l2(a: &DenseOperator, convention: L2InfluenceConvention, tol: &Tolerances) -> InequalityReport {
    let lhs = normalized_variance(a);
    let mut rhs = 0.0;
    let mut notes = Vec::new();
    for j in 0..a.n() {
        let sq = l2_influence_dense(a, j);
        let i2 = match convention {
            L2InfluenceConvention::Norm => sq.sqrt(),
            L2InfluenceConvention::Squared => sq,
        };
        if i2 <= 0.0 {
            continue;
        }
        let i1 = l1_influence_dense(a, j);
        let denom = 1.0 + (i2 / i1).ln();
        if denom <= 0.0 {
            notes.push(format!("qubit {j}: nonpositive denominator {denom:.3e}"));
            rhs = f64::INFINITY;
            continue;
        }
        rhs += i2 * i2 / denom;
    }
    let k = l1l2_prefactor();
    let mut r = InequalityReport::new("talagrand_l1l2", a.n(), lhs, rhs)
        .with_constant(k, tol.inequality)
        .extra("prefactor", k);
    r.notes = notes;
    r
}

fn require_balanced_boolean(a: &DenseOperator, tol: &Tolerances) -> Result<()> {
    let chk = is_quantum_boolean(a, tol.boolean);
    if !chk.is_boolean {
        return Err(Error::NotQuantumBoolean { hermitian: chk.hermitian_residual, square: chk.square_residual });
    }
    let tr = a.normalized_trace().norm();
    if tr > tol.boolean {
        return Err(Error::NotBalanced(tr));
    }
    Ok(())
}

/// `max_j Inf¹_j(A) ≥ C √(log n)/n` for balanced quantum Boolean `A`.
///
/// Also records the `L²` counterpart `max_j Inf²_j(A)` against `log(n)/n`.
pub fn kkl_max_influence(a: &DenseOperator, tol: &Tolerances) -> Result<InequalityReport> {
    require_balanced_boolean(a, tol)?;
    let n = a.n();
    let inf1 = l1_influences(a);
    let (arg, max1) = inf1.iter().copied().enumerate().fold((0, f64::NEG_INFINITY), |b, (i, v)| {
        if v > b.1 {
            (i, v)
        } else {
            b
        }
    });
    let max2 = (0..n).map(|j| l2_influence_dense(a, j)).fold(0.0, f64::max);
    let nf = n as f64;
    let rhs = nf.ln().sqrt() / nf;
    let mut r = InequalityReport::new("kkl_max_influence", n, max1, rhs)
        .extra("argmax1", arg as f64)
        .extra("max_inf2", max2)
        .extra("l2_rhs", nf.ln() / nf);
    if n >= 2 {
        r = r.extra("l2_implied_constant", max2 / (nf.ln() / nf));
    }
    if r.degenerate {
        r.notes.push("n = 1: right side vanishes".into());
    }
    Ok(r)
}

/// Outcome of the auxiliary KKL arithmetic lemma.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AuxKklOutcome {
    /// The hypothesis `Σ_j talagrand_term(a_j) ≥ c` fails.
    NotApplicable { hypothesis_sum: f64 },
    Checked { max: f64, bound: f64, holds: bool },
}

impl AuxKklOutcome {
    /// `None` when not applicable.
    pub fn holds(&self) -> Option<bool> {
        match self {
            Self::NotApplicable { .. } => None,
            Self::Checked { holds, .. } => Some(*holds),
        }
    }
}

/// If `Σ_j a_j(1 + a_j)/(1 + log⁺(1/a_j))^{1/2} ≥ c` then
/// `max_j a_j ≥ min{c/(2√2), 1} √(log n)/n`.
pub fn lemma_aux_kkl(a: &[f64], c: f64) -> Result<AuxKklOutcome> {
    if a.is_empty() || !(c > 0.0) || a.iter().any(|x| !(*x >= 0.0)) {
        return Err(Error::InvalidParameter("need nonempty nonnegative a and positive c".into()));
    }
    let sum: f64 = a.iter().copied().map(talagrand_term).sum();
    if sum < c {
        return Ok(AuxKklOutcome::NotApplicable { hypothesis_sum: sum });
    }
    let n = a.len() as f64;
    let max = a.iter().copied().fold(0.0, f64::max);
    let bound = (c / (2.0 * SQRT_2)).min(1.0) * n.ln().sqrt() / n;
    Ok(AuxKklOutcome::Checked { max, bound, holds: max >= bound * (1.0 - 1e-12) })
}

/// Numerical value of `∫_0^r t^{-(1-1/p(t))} a^{2/p(t)-1} dt`, `p(t) = 1 + e^{-2αt}`,
/// against `(1/√α)(1 + a)/(1 + log⁺(1/a))^{1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralLemmaReport {
    pub alpha: f64,
    pub a: f64,
    pub r: f64,
    pub integral: f64,
    pub error_estimate: f64,
    pub reference: f64,
    pub implied_constant: f64,
}

pub fn integral_lemma_integrand(alpha: f64, a: f64, t: f64) -> f64 {
    if t <= 0.0 || a == 0.0 {
        return 0.0;
    }
    // 1 - 1/p(t) = 1/(1 + e^{2αt}) and 2/p(t) - 1 = tanh(αt).
    let power = 1.0 / (1.0 + (2.0 * alpha * t).exp());
    (-power * t.ln() + (alpha * t).tanh() * a.ln()).exp()
}

pub fn integral_lemma_check(alpha: f64, a: f64, r: f64) -> Result<IntegralLemmaReport> {
    if !(alpha > 0.0) || alpha.is_infinite() {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    if !(a >= 0.0) || a.is_infinite() {
        return Err(Error::InvalidParameter(format!("a must be nonnegative, got {a}")));
    }
    let r_max = 1.0f64.min(1.0 / (2.0 * alpha));
    if !(r >= 0.0) || r > r_max {
        return Err(Error::InvalidParameter(format!("r must lie in [0, {r_max}], got {r}")));
    }
    let reference = (1.0 + a) / (alpha.sqrt() * (1.0 + log_plus(1.0 / a)).sqrt());
    let (integral, error_estimate) = if a == 0.0 || r == 0.0 {
        (0.0, 0.0)
    } else {
        // t = u² removes the t^{-1/2} endpoint singularity.
        let f = |u: f64| 2.0 * u * integral_lemma_integrand(alpha, a, u * u);
        let first = quadrature::double_exponential::integrate(f, 0.0, r.sqrt(), 1e-10);
        let target = (1e-9 * first.integral.abs()).clamp(1e-16, 1e-10);
        let out = quadrature::double_exponential::integrate(f, 0.0, r.sqrt(), target);
        (out.integral, out.error_estimate)
    };
    let implied_constant = if reference > 0.0 { integral / reference } else { 0.0 };
    Ok(IntegralLemmaReport { alpha, a, r, integral, error_estimate, reference, implied_constant })
}

/// `Σ_j Inf¹_j(P) ≥ C τ(1-τ) (log(n/(τ(1-τ))))^{1/2}` with `τ = 2^{-n} tr P`.
///
/// The `L²` variant `Σ_j Inf²_j(P)` against `τ(1-τ) log(n/(τ(1-τ)))` is recorded
/// in `extra` and never asserted.
pub fn isoperimetry_check(p: &DenseOperator, tol: &Tolerances) -> Result<InequalityReport> {
    let herm = p.hermitian_residual();
    let idem = linalg::operator_norm(&(p.matrix() * p.matrix() - p.matrix()));
    if herm > tol.boolean || idem > tol.boolean {
        return Err(Error::NotProjector(herm.max(idem)));
    }
    let n = p.n();
    let tau = p.normalized_trace().re;
    let lhs: f64 = l1_influences(p).iter().sum();
    let lhs2: f64 = (0..n).map(|j| l2_influence_dense(p, j)).sum();
    let v = tau * (1.0 - tau);
    let degenerate = v <= tol.boolean;
    let (rhs, rhs2) = if degenerate {
        (0.0, 0.0)
    } else {
        let lg = (n as f64 / v).ln();
        (v * lg.sqrt(), v * lg)
    };
    let mut r = InequalityReport::new("isoperimetry_l1", n, lhs, rhs)
        .extra("tau", tau)
        .extra("l2_lhs", lhs2)
        .extra("l2_rhs", rhs2);
    if rhs2 > 0.0 {
        r = r.extra("l2_implied_constant", lhs2 / rhs2);
    }
    if degenerate {
        r.notes.push("tau in {0, 1}: trivially satisfied".into());
        r.satisfied = Some(true);
    }
    Ok(r)
}

/// `Var(A) ≤ Inf²(A)`, the `L²` Poincaré inequality with constant 1.
pub fn poincare_l2(a: &DenseOperator, tol: &Tolerances) -> InequalityReport {
    let lhs = normalized_variance(a);
    let rhs: f64 = (0..a.n()).map(|j| l2_influence_dense(a, j)).sum();
    InequalityReport::new("poincare_l2", a.n(), lhs, rhs).with_constant(1.0, tol.inequality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{dictator, parity};
    use crate::pauli::{pauli_matrix, to_dense, PauliString};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::E;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn poincare_examples() {
        let tol = Tolerances::default();
        let r = poincare_l1(&pauli_matrix(ps("3")), &tol);
        assert_abs_diff_eq!(r.implied_constant.unwrap(), 1.0 / PI, epsilon = 1e-14);
        assert_eq!(r.satisfied, Some(true));
        let r = poincare_l1(&DenseOperator::identity(2), &tol);
        assert!(r.degenerate);
        assert_eq!(r.satisfied_at, 0.0);
    }

    #[test]
    fn strong_poincare_examples() {
        let tol = Tolerances::default();
        let r = strong_poincare_l1(&DenseOperator::identity(2), &tol);
        assert!(r.report.lhs.abs() < 1e-15 && r.middle.abs() < 1e-15 && r.right.abs() < 1e-15);
        assert!(r.chain_holds());
        let r = strong_poincare_l1(&pauli_matrix(ps("3")), &tol);
        assert_abs_diff_eq!(r.report.lhs, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.middle, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.right, 1.0, epsilon = 1e-14);
        assert!(r.chain_holds());
    }

    #[test]
    fn talagrand_dictator_is_half() {
        let r = talagrand_l1(&to_dense(&dictator(3, 0).unwrap()));
        assert_abs_diff_eq!(r.lhs, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.rhs_without_constant, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.implied_constant.unwrap(), 0.5, epsilon = 1e-14);
        assert!(talagrand_l1(&DenseOperator::identity(2)).degenerate);
    }

    #[test]
    fn talagrand_rescales_large_operators() {
        let big = pauli_matrix(ps("30")).scaled(num_complex::Complex64::new(2.0, 0.0));
        let r = talagrand_l1(&big);
        assert_abs_diff_eq!(r.extra["scale"], 0.5, epsilon = 1e-14);
        assert_eq!(r.notes.len(), 1);
        assert_abs_diff_eq!(r.implied_constant.unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn l1l2_examples() {
        let tol = Tolerances::default();
        assert_abs_diff_eq!(l1l2_prefactor(), 2.0 * E / (1.0 - 1.0 / E), epsilon = 1e-14);
        let r = talagrand_l1l2(&pauli_matrix(ps("3")), L2InfluenceConvention::Norm, &tol);
        assert_abs_diff_eq!(r.rhs_without_constant, 1.0, epsilon = 1e-14);
        assert_eq!(r.satisfied, Some(true));
    }

    #[test]
    fn kkl_examples() {
        let tol = Tolerances::default();
        let r = kkl_max_influence(&pauli_matrix(ps("3")), &tol).unwrap();
        assert!(r.degenerate);
        assert_abs_diff_eq!(r.lhs, 1.0, epsilon = 1e-14);
        let r = kkl_max_influence(&to_dense(&parity(4).unwrap()), &tol).unwrap();
        assert_abs_diff_eq!(r.implied_constant.unwrap(), 4.0 / 4f64.ln().sqrt(), epsilon = 1e-12);
        assert!(r.implied_constant.unwrap() > 3.39);
        assert!(kkl_max_influence(&DenseOperator::identity(2), &tol).is_err());
    }

    #[test]
    fn aux_kkl_examples() {
        let ones = vec![1.0; 8];
        assert_eq!(lemma_aux_kkl(&ones, 16.0).unwrap().holds(), Some(true));
        let n = 7usize;
        let flat = vec![1.0 / n as f64; n];
        let c: f64 = flat.iter().copied().map(talagrand_term).sum();
        assert_eq!(lemma_aux_kkl(&flat, c).unwrap().holds(), Some(true));
        let spike = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(lemma_aux_kkl(&spike, 2.0).unwrap().holds(), Some(true));
        assert!(matches!(lemma_aux_kkl(&spike, 3.0).unwrap(), AuxKklOutcome::NotApplicable { .. }));
    }

    #[test]
    fn integral_lemma_examples() {
        let r = integral_lemma_check(1.0, 0.0, 0.5).unwrap();
        assert_eq!(r.integral, 0.0);
        let r = integral_lemma_check(1.0, 1.0, 0.5).unwrap();
        assert!(r.integral <= 2f64.sqrt());
        assert!(r.integral > 0.0);
        assert!(integral_lemma_check(2.0, 1.0, 0.25).is_ok());
        assert!(integral_lemma_check(2.0, 1.0, 0.26).is_err());
        assert!(integral_lemma_check(0.5, 1.0, 1.0).is_ok());
        assert!(integral_lemma_check(-1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn isoperimetry_examples() {
        let tol = Tolerances::default();
        let r = isoperimetry_check(&DenseOperator::identity(2), &tol).unwrap();
        assert!(r.degenerate);
        let p = DenseOperator::from_diagonal(2, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        let r = isoperimetry_check(&p, &tol).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rhs_without_constant, 0.25 * 8f64.ln().sqrt(), epsilon = 1e-14);
        assert!(isoperimetry_check(&pauli_matrix(ps("30")), &tol).is_err());
    }
}
