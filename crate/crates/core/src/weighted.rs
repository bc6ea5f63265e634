// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! The generalized depolarizing semigroup with a full-rank single-qubit
//! state `ω`, on the KMS-weighted matrix algebra of `σ = ω^{⊗n}`.
//!
//! `P_t = (e^{-t} id + (1 - e^{-t}) tr(ω ·) 1)^{⊗n}`, `d_j = id - E_j` with
//! `E_j` the site-`j` expectation against `ω`, and `φ = tr(σ ·)`. The
//! `L^p` norms are `‖i_p(x)‖ = tr(|σ^{1/2p} x σ^{1/2p}|^p)^{1/p}` with the
//! unnormalized trace. [`verify_axioms`] checks the structural axioms of the
//! weighted framework on random test operators.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, SQRT_2};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ensembles::{instance_rng, random_hermitian, random_operator};
use crate::error::{Error, Result};
use crate::inequalities::InequalityReport;
use crate::linalg::{self, CMatrix};
use crate::pauli::DenseOperator;
use crate::sites::{self, Qubit2};

/// Gradient-estimate constant `K` of the depolarizing family.
pub const GRADIENT_K: f64 = 0.5;
/// Constant `M` in `max_j ‖d_j x‖ ≤ M ‖Γ(x)‖^{1/2}`.
pub const DERIVATION_M: f64 = SQRT_2;
/// Poincaré constant `λ`.
pub const POINCARE_LAMBDA: f64 = 1.0;
/// Intertwining constant `μ`.
pub const INTERTWINING_MU: f64 = 1.0;

/// `e_K(t) = 2∫₀ᵗ e^{2Ks} ds`.
pub fn e_k(k: f64, t: f64) -> f64 {
    if k == 0.0 {
        2.0 * t
    } else {
        (2.0 * k * t).exp_m1() / k
    }
}

/// Reference state `σ = ω^{⊗n}` and the maps built from it.
#[derive(Clone, Debug)]
pub struct WeightedContext {
    n: usize,
    omega: Qubit2,
    omega_matrix: CMatrix,
    omega_eigenvalues: [f64; 2],
}

fn qubit2_of(m: &CMatrix) -> Qubit2 {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

impl WeightedContext {
    /// `omega` must be a 2×2 positive definite matrix of unit trace.
    pub fn new(omega: &CMatrix, n: usize) -> Result<Self> {
        if omega.nrows() != 2 || omega.ncols() != 2 {
            return Err(Error::InvalidState(format!("omega must be 2x2, got {}x{}", omega.nrows(), omega.ncols())));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let herm = linalg::hermitian_residual(omega);
        if herm > 1e-12 {
            return Err(Error::InvalidState(format!("omega is not Hermitian (residual {herm:.3e})")));
        }
        let tr = omega.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::InvalidState(format!("omega has trace {tr}")));
        }
        let h = linalg::hermitian_part(omega);
        let ev = linalg::hermitian_eigenvalues(&h);
        let (lo, hi) = (ev.min(), ev.max());
        if !(lo > 0.0) {
            return Err(Error::InvalidState(format!("omega is not full rank (smallest eigenvalue {lo:.3e})")));
        }
        Ok(Self { n, omega: qubit2_of(&h), omega_matrix: h, omega_eigenvalues: [lo, hi] })
    }

    /// `ω = diag(q, 1 - q)`.
    pub fn diagonal(q: f64, n: usize) -> Result<Self> {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(q, 0.0);
        m[(1, 1)] = Complex64::new(1.0 - q, 0.0);
        Self::new(&m, n)
    }

    /// `ω = 1/2`.
    pub fn tracial(n: usize) -> Self {
        Self::diagonal(0.5, n).expect("maximally mixed state is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &CMatrix {
        &self.omega_matrix
    }

    /// `λ_max(ω)/λ_min(ω)`.
    pub fn condition_number(&self) -> f64 {
        self.omega_eigenvalues[1] / self.omega_eigenvalues[0]
    }

    /// `σ^s`, computed site-wise.
    pub fn sigma_power(&self, s: f64) -> CMatrix {
        let w = linalg::hermitian_function(&self.omega_matrix, |l| l.powf(s));
        linalg::kron_all(std::iter::repeat_n(&w, self.n))
    }

    pub fn sigma(&self) -> CMatrix {
        self.sigma_power(1.0)
    }

    fn check(&self, x: &DenseOperator) -> Result<()> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.n() });
        }
        Ok(())
    }

    /// `φ(x) = tr(σx)`.
    pub fn phi(&self, x: &DenseOperator) -> Result<Complex64> {
        self.check(x)?;
        Ok((self.sigma() * x.matrix()).trace())
    }

    /// `i_p(x) = σ^{1/2p} x σ^{1/2p}`.
    pub fn embed(&self, x: &DenseOperator, p: f64) -> Result<CMatrix> {
        self.check(x)?;
        let s = self.sigma_power(1.0 / (2.0 * p));
        Ok(&s * x.matrix() * &s)
    }

    /// `‖i_p(x)‖` for `p ∈ [1, ∞)`; `p = ∞` gives the operator norm of `x`.
    pub fn kms_norm(&self, x: &DenseOperator, p: f64) -> Result<f64> {
        self.check(x)?;
        if !(p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        if p.is_infinite() {
            return Ok(linalg::operator_norm(x.matrix()));
        }
        let sv = linalg::singular_values(&self.embed(x, p)?);
        if p == 1.0 {
            return Ok(sv.iter().sum());
        }
        Ok(sv.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p))
    }

    /// `⟨i₂(x), i₂(y)⟩ = tr((σ^{1/4}xσ^{1/4})* σ^{1/4}yσ^{1/4})`.
    pub fn kms_inner(&self, x: &DenseOperator, y: &DenseOperator) -> Result<Complex64> {
        Ok(linalg::trace_inner(&self.embed(x, 2.0)?, &self.embed(y, 2.0)?))
    }

    pub fn d_j(&self, x: &DenseOperator, j: usize) -> Result<DenseOperator> {
        self.check(x)?;
        self.check_site(j)?;
        Ok(DenseOperator::from_parts(self.n, sites::site_derivation(x.matrix(), self.n, j, &self.omega)))
    }

    fn check_site(&self, j: usize) -> Result<()> {
        if j >= self.n {
            return Err(Error::QubitOutOfRange { index: j, n: self.n });
        }
        Ok(())
    }

    pub fn semigroup(&self, x: &DenseOperator, t: f64) -> Result<DenseOperator> {
        self.check(x)?;
        check_time(t)?;
        Ok(DenseOperator::from_parts(self.n, sites::full_semigroup(x.matrix(), self.n, t, &self.omega)))
    }

    /// `P_t` restricted to every site except `skip`.
    pub fn semigroup_except(&self, x: &DenseOperator, skip: usize, t: f64) -> Result<DenseOperator> {
        self.check(x)?;
        self.check_site(skip)?;
        check_time(t)?;
        Ok(DenseOperator::from_parts(self.n, sites::semigroup_except(x.matrix(), self.n, skip, t, &self.omega)))
    }

    /// `L = Σ_j d_j`, so that `P_t = e^{-tL}`.
    pub fn generator(&self, x: &DenseOperator) -> Result<DenseOperator> {
        self.check(x)?;
        Ok(DenseOperator::from_parts(self.n, sites::generator(x.matrix(), self.n, &self.omega)))
    }

    /// `Γ(x) = (L(x)*x + x*L(x) - L(x*x))/2`.
    pub fn carre_du_champ(&self, x: &DenseOperator) -> Result<DenseOperator> {
        self.check(x)?;
        Ok(DenseOperator::from_parts(self.n, sites::carre_du_champ(x.matrix(), self.n, &self.omega)))
    }

    /// Smallest nonzero eigenvalue of `L` on the KMS Hilbert space.
    pub fn spectral_gap(&self) -> f64 {
        let d = 1usize << self.n;
        let up = self.sigma_power(0.25);
        let down = self.sigma_power(-0.25);
        let mut t = CMatrix::zeros(d * d, d * d);
        for col in 0..d * d {
            let mut e = CMatrix::zeros(d, d);
            e[(col / d, col % d)] = Complex64::new(1.0, 0.0);
            let y = &down * e * &down;
            let ly = &up * sites::generator(&y, self.n, &self.omega) * &up;
            for row in 0..d * d {
                t[(row, col)] = ly[(row / d, row % d)];
            }
        }
        linalg::hermitian_eigenvalues(&linalg::hermitian_part(&t))
            .iter()
            .copied()
            .filter(|&v| v > 1e-9)
            .fold(f64::INFINITY, f64::min)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("t must be nonnegative, got {t}")));
    }
    Ok(())
}

/// `(√K/M) ‖i₁(x - φ(x)1)‖ ≤ (π/2) Σ_j ‖i₁(d_j x)‖` at the depolarizing
/// constants. The report carries constant 1.
pub fn general_poincare_l1(ctx: &WeightedContext, x: &DenseOperator, tol: f64) -> Result<InequalityReport> {
    let phi = ctx.phi(x)?;
    let centered = x.difference(&DenseOperator::identity(ctx.n()).scaled(phi))?;
    let deviation = ctx.kms_norm(&centered, 1.0)?;
    let mut inf1 = 0.0;
    for j in 0..ctx.n() {
        inf1 += ctx.kms_norm(&ctx.d_j(x, j)?, 1.0)?;
    }
    let lhs = GRADIENT_K.sqrt() / DERIVATION_M * deviation;
    let mut r = InequalityReport::new("general_poincare_l1", ctx.n(), lhs, FRAC_PI_2 * inf1).with_constant(1.0, tol);
    r.extra.insert("inf1".into(), inf1);
    r.extra.insert("deviation_l1".into(), deviation);
    Ok(r)
}

/// One numerical check in an [`AxiomReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    /// Constant the check is run at.
    pub constant: f64,
    /// Counted in [`AxiomReport::asserted_hold`].
    pub asserted: bool,
    pub evaluations: usize,
    /// Smallest slack over all evaluations; negative means violated.
    pub worst_slack: f64,
    pub tolerance: f64,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Default)]
struct SlackTracker {
    worst: f64,
    count: usize,
}

impl SlackTracker {
    fn new() -> Self {
        Self { worst: f64::INFINITY, count: 0 }
    }

    fn push(&mut self, slack: f64) {
        self.worst = self.worst.min(slack);
        self.count += 1;
    }

    fn finish(self, name: &str, constant: f64, asserted: bool, tolerance: f64) -> AxiomCheck {
        let worst_slack = if self.count == 0 { 0.0 } else { self.worst };
        AxiomCheck {
            name: name.into(),
            constant,
            asserted,
            evaluations: self.count,
            worst_slack,
            tolerance,
            satisfied: worst_slack >= -tolerance,
            note: None,
        }
    }
}

/// Settings for [`verify_axioms`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomConfig {
    /// Random test operators, half Hermitian, each scaled to `‖x‖_∞ = 1`.
    pub samples: usize,
    pub seed: u64,
    /// Slack allowed on PSD orderings and norm inequalities.
    pub tol: f64,
    /// Slack allowed on identities.
    pub identity_tol: f64,
    pub times: Vec<f64>,
    /// Exponents for the intertwining checks; `f64::INFINITY` is allowed.
    pub exponents: Vec<f64>,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        Self {
            samples: 12,
            seed: 0,
            tol: 1e-8,
            identity_tol: 1e-10,
            times: vec![0.01, 0.1, 0.5, 1.0, 2.0],
            exponents: vec![1.0, 1.5, 2.0, 4.0, f64::INFINITY],
        }
    }
}

/// Result of [`verify_axioms`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub n: usize,
    /// Rows of `ω` as `[re, im]` pairs.
    pub omega: Vec<Vec<[f64; 2]>>,
    pub condition_number: f64,
    pub spectral_gap: f64,
    /// Largest `α` on the grid with `‖i₂(P_t x)‖ ≤ ‖i_p(x)‖`, `p = 1 + e^{-2αt}`.
    pub hypercontractivity_alpha: f64,
    pub checks: Vec<AxiomCheck>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub extra: BTreeMap<String, f64>,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn asserted_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.asserted).all(|c| c.satisfied)
    }

    pub fn failed(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| c.asserted && !c.satisfied).collect()
    }
}

fn unit_norm(x: DenseOperator) -> DenseOperator {
    let s = linalg::operator_norm(x.matrix());
    if s == 0.0 {
        x
    } else {
        x.scaled(Complex64::new(1.0 / s, 0.0))
    }
}

/// Random test operators for the axiom checks.
pub fn axiom_samples<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<DenseOperator> {
    (0..count)
        .map(|i| unit_norm(if i % 2 == 0 { random_hermitian(n, rng) } else { random_operator(n, rng) }))
        .collect()
}

fn psd_slack(a: &DenseOperator) -> f64 {
    linalg::min_eigenvalue(&linalg::hermitian_part(a.matrix()))
}

/// Checks the weighted-framework axioms on random test operators.
///
/// Asserted checks: the Dirichlet identity `⟨x, Lx⟩ = Σ‖i₂(d_j x)‖²`, the
/// gradient estimate `Γ(P_t x) ⪯ e^{-2Kt} P_t Γ(x)`, `max_j ‖d_j x‖ ≤ M‖Γ(x)‖^{1/2}`,
/// the Poincaré inequality at `λ` (Rayleigh quotients and the exact gap),
/// the intertwining inequality `‖i_p(d_j P_t x)‖ ≤ e^{-μt}‖i_p(P_t d_j x)‖`,
/// KMS symmetry, the reverse Poincaré bound, and the general `L¹`-Poincaré
/// inequality. Also asserted is the site-factored identity
/// `d_j P_t = e^{-t} P_t^{(≠j)} d_j`. The hypercontractivity constant is
/// only reported.
pub fn verify_axioms(ctx: &WeightedContext, cfg: &AxiomConfig) -> Result<AxiomReport> {
    let n = ctx.n();
    let mut rng = instance_rng(cfg.seed, n as u64);
    let xs = axiom_samples(n, cfg.samples, &mut rng);
    let ys = axiom_samples(n, cfg.samples, &mut rng);
    let id_tol = cfg.identity_tol;
    let mut checks = Vec::new();

    let mut dirichlet = SlackTracker::new();
    let mut gradient = SlackTracker::new();
    let mut derivation = SlackTracker::new();
    let mut poincare = SlackTracker::new();
    let mut intertwining = SlackTracker::new();
    let mut factored = SlackTracker::new();
    let mut factored_bound = SlackTracker::new();
    let mut symmetry = SlackTracker::new();
    let mut reverse = SlackTracker::new();
    let mut reverse_norm = SlackTracker::new();
    let mut l1_poincare = SlackTracker::new();
    let mut worst_intertwining_ratio: f64 = 0.0;

    for (x, y) in xs.iter().zip(&ys) {
        let lx = ctx.generator(x)?;
        let energy = ctx.kms_inner(x, &lx)?;
        let mut dj_sum = 0.0;
        let mut dj_max: f64 = 0.0;
        let mut djs = Vec::with_capacity(n);
        for j in 0..n {
            let d = ctx.d_j(x, j)?;
            dj_sum += ctx.kms_inner(&d, &d)?.re;
            dj_max = dj_max.max(linalg::operator_norm(d.matrix()));
            djs.push(d);
        }
        dirichlet.push(-(energy - Complex64::new(dj_sum, 0.0)).norm());

        let gx = ctx.carre_du_champ(x)?;
        let g_norm = linalg::operator_norm(gx.matrix());
        derivation.push(DERIVATION_M * g_norm.sqrt() - dj_max);

        let centered = x.difference(&DenseOperator::identity(n).scaled(ctx.phi(x)?))?;
        let var = ctx.kms_inner(&centered, &centered)?.re;
        poincare.push(energy.re - POINCARE_LAMBDA * var);

        let r = general_poincare_l1(ctx, x, cfg.tol)?;
        l1_poincare.push(r.rhs_without_constant - r.lhs);

        let x_norm2 = linalg::operator_norm(x.matrix()).powi(2);
        let xx = x.adjoint().product(x)?;
        for &t in &cfg.times {
            let ptx = ctx.semigroup(x, t)?;
            let pty = ctx.semigroup(y, t)?;
            symmetry.push(-(ctx.kms_inner(&ptx, y)? - ctx.kms_inner(x, &pty)?).norm());

            let g_pt = ctx.carre_du_champ(&ptx)?;
            let bound = ctx.semigroup(&gx, t)?.scaled(Complex64::new((-2.0 * GRADIENT_K * t).exp(), 0.0));
            gradient.push(psd_slack(&bound.difference(&g_pt)?));

            let ek = e_k(GRADIENT_K, t);
            let variance_part = ctx.semigroup(&xx, t)?.difference(&ptx.adjoint().product(&ptx)?)?;
            reverse.push(psd_slack(&variance_part.scaled(Complex64::new(1.0 / ek, 0.0)).difference(&g_pt)?));
            let flat = DenseOperator::identity(n).scaled(Complex64::new(x_norm2 / ek, 0.0));
            reverse_norm.push(psd_slack(&flat.difference(&g_pt)?));

            let decay = (-INTERTWINING_MU * t).exp();
            for (j, dj) in djs.iter().enumerate() {
                let lhs_op = ctx.d_j(&ptx, j)?;
                let rhs_op = ctx.semigroup(dj, t)?;
                let rest_op = ctx.semigroup_except(dj, j, t)?;
                for &p in &cfg.exponents {
                    let lhs = ctx.kms_norm(&lhs_op, p)?;
                    let rhs = ctx.kms_norm(&rhs_op, p)?;
                    intertwining.push(decay * rhs - lhs);
                    if decay * rhs > 0.0 {
                        worst_intertwining_ratio = worst_intertwining_ratio.max(lhs / (decay * rhs));
                    }
                    let rest = ctx.kms_norm(&rest_op, p)?;
                    factored.push(-(lhs - (-t).exp() * rest).abs());
                    factored_bound.push((-t).exp() * ctx.kms_norm(dj, p)? - lhs);
                }
            }
        }
    }

    let gap = ctx.spectral_gap();
    poincare.push(gap - POINCARE_LAMBDA);

    checks.push(dirichlet.finish("dirichlet_identity", 1.0, true, id_tol));
    checks.push(gradient.finish("gradient_estimate", GRADIENT_K, true, cfg.tol));
    checks.push(derivation.finish("derivation_bound", DERIVATION_M, true, cfg.tol));
    checks.push(poincare.finish("poincare", POINCARE_LAMBDA, true, cfg.tol));
    let mut inter = intertwining.finish("intertwining", INTERTWINING_MU, true, cfg.tol);
    if !inter.satisfied {
        inter.note = Some(format!(
            "d_j and P_t commute, so both sides agree up to the factor e^(-mu t); largest lhs/bound ratio {worst_intertwining_ratio:.6}"
        ));
    }
    checks.push(inter);
    checks.push(factored.finish("intertwining_site_factored", 1.0, true, id_tol));
    checks.push(factored_bound.finish("intertwining_site_factored_bound", 1.0, true, cfg.tol));
    checks.push(symmetry.finish("kms_symmetry", 1.0, true, id_tol));
    checks.push(reverse.finish("reverse_poincare", GRADIENT_K, true, cfg.tol));
    checks.push(reverse_norm.finish("reverse_poincare_norm", GRADIENT_K, true, cfg.tol));
    checks.push(l1_poincare.finish("general_poincare_l1", 1.0, true, cfg.tol));

    let alpha = hypercontractivity_alpha(ctx, &xs)?;
    let reported = SlackTracker::new().finish("hypercontractivity", alpha, false, 0.0);
    checks.push(AxiomCheck { evaluations: xs.len(), note: Some("best alpha on the grid, reported only".into()), ..reported });

    let omega = (0..2)
        .map(|r| (0..2).map(|c| [ctx.omega()[(r, c)].re, ctx.omega()[(r, c)].im]).collect())
        .collect();
    let mut extra = BTreeMap::new();
    extra.insert("intertwining_max_ratio".into(), worst_intertwining_ratio);
    Ok(AxiomReport {
        n,
        omega,
        condition_number: ctx.condition_number(),
        spectral_gap: gap,
        hypercontractivity_alpha: alpha,
        checks,
        extra,
    })
}

/// Times `0.05k`, `k = 1..=20`, for the hypercontractivity report.
pub const HYPERCONTRACTIVITY_TIMES: usize = 20;

/// Largest `α ∈ [0, 4]` (bisection to `1e-6`) such that
/// `‖i₂(P_t x)‖ ≤ ‖i_p(x)‖` with `p = 1 + e^{-2αt}` on every sample and grid time.
pub fn hypercontractivity_alpha(ctx: &WeightedContext, xs: &[DenseOperator]) -> Result<f64> {
    let times: Vec<f64> = (1..=HYPERCONTRACTIVITY_TIMES).map(|k| 0.05 * k as f64).collect();
    let mut targets = Vec::new();
    for x in xs {
        for &t in &times {
            targets.push((x, t, ctx.kms_norm(&ctx.semigroup(x, t)?, 2.0)?));
        }
    }
    let feasible = |alpha: f64| -> Result<bool> {
        for &(x, t, lhs) in &targets {
            let p = 1.0 + (-2.0 * alpha * t).exp();
            if lhs > ctx.kms_norm(x, p)? * (1.0 + 1e-12) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let (mut lo, mut hi) = (0.0, 4.0);
    if feasible(hi)? {
        return Ok(hi);
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::influence::d_j_dense;
    use crate::pauli::{pauli_matrix, schatten_norm, PauliString};
    use crate::semigroup::apply_semigroup_dense;
    use approx::assert_abs_diff_eq;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_bad_states() {
        assert!(WeightedContext::diagonal(1.0, 2).is_err());
        assert!(WeightedContext::diagonal(1.2, 2).is_err());
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(0.5, 0.0);
        m[(1, 1)] = Complex64::new(0.5, 0.0);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(WeightedContext::new(&m, 1).is_err());
    }

    #[test]
    fn norm_examples() {
        let ctx = WeightedContext::diagonal(0.7, 2).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0] {
            assert_abs_diff_eq!(ctx.kms_norm(&DenseOperator::identity(2), p).unwrap(), 1.0, epsilon = 1e-12);
        }
        let one = WeightedContext::diagonal(0.3, 1).unwrap();
        assert_abs_diff_eq!(one.kms_norm(&pauli_matrix(ps("3")), 1.0).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn tracial_reduction() {
        let ctx = WeightedContext::tracial(2);
        let mut rng = instance_rng(3, 0);
        let x = random_operator(2, &mut rng);
        for p in [1.0, 1.7, 2.0, 4.0] {
            let a = ctx.kms_norm(&x, p).unwrap();
            let b = schatten_norm(&x, p).unwrap().value;
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
        for j in 0..2 {
            assert!(ctx.d_j(&x, j).unwrap().max_abs_diff(&d_j_dense(&x, j).unwrap()) < 1e-14);
        }
        let pt = ctx.semigroup(&x, 0.4).unwrap();
        assert!(pt.max_abs_diff(&apply_semigroup_dense(&x, 0.4).unwrap()) < 1e-13);
    }

    #[test]
    fn derivation_of_z() {
        let q = 0.8;
        let ctx = WeightedContext::diagonal(q, 1).unwrap();
        let d = ctx.d_j(&pauli_matrix(ps("3")), 0).unwrap();
        let expect = pauli_matrix(ps("3")).difference(&DenseOperator::identity(1).scaled(Complex64::new(2.0 * q - 1.0, 0.0))).unwrap();
        assert!(d.max_abs_diff(&expect) < 1e-15);
        assert!(ctx.d_j(&d, 0).unwrap().max_abs_diff(&d) < 1e-15);
        assert!(ctx.d_j(&DenseOperator::identity(1), 0).unwrap().max_abs_diff(&DenseOperator::zeros(1)) < 1e-15);
    }

    #[test]
    fn semigroup_law_and_limit() {
        let ctx = WeightedContext::diagonal(0.6, 2).unwrap();
        let mut rng = instance_rng(5, 0);
        let x = random_operator(2, &mut rng);
        let two = ctx.semigroup(&ctx.semigroup(&x, 0.3).unwrap(), 0.5).unwrap();
        assert!(two.max_abs_diff(&ctx.semigroup(&x, 0.8).unwrap()) < 1e-12);
        assert!(ctx.semigroup(&x, 0.0).unwrap().max_abs_diff(&x) < 1e-15);
        let phi = ctx.phi(&x).unwrap();
        let far = ctx.semigroup(&x, 60.0).unwrap();
        assert!(far.max_abs_diff(&DenseOperator::identity(2).scaled(phi)) < 1e-12);
    }

    #[test]
    fn e_k_closed_forms() {
        assert_abs_diff_eq!(e_k(0.0, 1.5), 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e_k(0.5, 1.0), 2.0 * (1f64.exp() - 1.0), epsilon = 1e-14);
        let (k, t) = (-0.7, 0.9);
        let m = 20_000;
        let h = t / m as f64;
        let simpson: f64 = (0..=m)
            .map(|i| {
                let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                w * (2.0 * k * i as f64 * h).exp()
            })
            .sum::<f64>()
            * h
            / 3.0;
        assert_abs_diff_eq!(e_k(k, t), 2.0 * simpson, epsilon = 1e-12);
    }

    #[test]
    fn spectral_gap_is_one() {
        for q in [0.5, 0.7, 0.9] {
            let ctx = WeightedContext::diagonal(q, 2).unwrap();
            assert_abs_diff_eq!(ctx.spectral_gap(), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn poincare_examples() {
        let ctx = WeightedContext::diagonal(0.6, 2).unwrap();
        let r = general_poincare_l1(&ctx, &DenseOperator::identity(2), 1e-9).unwrap();
        assert!(r.lhs.abs() < 1e-14 && r.rhs_without_constant.abs() < 1e-14);
        let ctx = WeightedContext::tracial(1);
        let r = general_poincare_l1(&ctx, &pauli_matrix(ps("3")), 1e-9).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(r.rhs_without_constant, FRAC_PI_2, epsilon = 1e-14);
    }

    #[test]
    fn axioms_at_small_n() {
        let ctx = WeightedContext::diagonal(0.7, 2).unwrap();
        let cfg = AxiomConfig { samples: 4, ..Default::default() };
        let r = verify_axioms(&ctx, &cfg).unwrap();
        for name in [
            "dirichlet_identity",
            "gradient_estimate",
            "derivation_bound",
            "poincare",
            "intertwining_site_factored",
            "intertwining_site_factored_bound",
            "kms_symmetry",
            "reverse_poincare",
            "reverse_poincare_norm",
            "general_poincare_l1",
        ] {
            let c = r.check(name).unwrap();
            assert!(c.satisfied, "{name}: {c:?}");
        }
        assert!(!r.check("intertwining").unwrap().satisfied);
        assert!(r.hypercontractivity_alpha > 0.0);
    }
}
