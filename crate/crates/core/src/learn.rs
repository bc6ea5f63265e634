// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Learning from a simulated coefficient oracle.
//!
//! [`QueryOracle`] holds a hidden Hermitian operator with `‖A‖_∞ ≤ 1` and
//! answers two kinds of queries: a Bernoulli bit that is 0 with probability
//! `(1 + Â_s)/2`, and a noisy estimate of the Fourier weight below a prefix.
//! Every answer is charged to a query counter. On top of these sit
//! coefficient estimation, a Goldreich–Levin prefix search, a learner for
//! quantum Boolean juntas, a low-degree learner, and the Bohnenblust–Hille
//! ratio.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::ensembles::instance_rng;
use crate::error::{Error, Result};
use crate::linalg;
use crate::pauli::{to_dense, FourierOperator, PauliString};

/// Largest register for which the oracle checks `‖A‖_∞` on the dense matrix;
/// above it the sufficient condition `Σ|Â_s| ≤ 1` is required instead.
pub const DENSE_NORM_CHECK_MAX_QUBITS: usize = 10;

/// Simulated query access to a hidden operator.
#[derive(Clone, Debug)]
pub struct QueryOracle {
    hidden: FourierOperator,
    rng: ChaCha20Rng,
    seed: u64,
    stream: u64,
    queries: u64,
    /// `(index, |Â_s|²)` sorted by index, for prefix weights.
    weights: Vec<(u64, f64)>,
    cumulative: Vec<f64>,
}

impl QueryOracle {
    /// Wraps `hidden`, which must be Hermitian with `‖A‖_∞ ≤ 1 + tol`.
    pub fn new(hidden: FourierOperator, seed: u64, stream: u64, tol: f64) -> Result<Self> {
        let herm = hidden.hermitian_residual();
        if herm > tol {
            return Err(Error::NotHermitian(herm));
        }
        let norm = if hidden.n() <= DENSE_NORM_CHECK_MAX_QUBITS {
            linalg::operator_norm(to_dense(&hidden).matrix())
        } else {
            hidden.terms().iter().map(|(_, c)| c.norm()).sum()
        };
        if norm > 1.0 + tol {
            return Err(Error::CoefficientOutOfRange(norm));
        }
        let mut weights: Vec<(u64, f64)> = hidden.terms().into_iter().map(|(s, c)| (s.code(), c.norm_sqr())).collect();
        weights.sort_by_key(|w| w.0);
        let mut cumulative = Vec::with_capacity(weights.len() + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for &(_, w) in &weights {
            acc += w;
            cumulative.push(acc);
        }
        Ok(Self { hidden, rng: instance_rng(seed, stream), seed, stream, queries: 0, weights, cumulative })
    }

    pub fn n(&self) -> usize {
        self.hidden.n()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// The hidden operator, for checking guarantees in simulation.
    pub fn hidden(&self) -> &FourierOperator {
        &self.hidden
    }

    fn check_string(&self, s: PauliString) -> Result<()> {
        if s.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: s.n() });
        }
        Ok(())
    }

    fn one_probability(&self, s: PauliString) -> f64 {
        ((1.0 - self.hidden.coeff(s).re) / 2.0).clamp(0.0, 1.0)
    }

    /// One bit `ε` with `P(ε = 0) = (1 + Â_s)/2`. Costs one query.
    pub fn sample_coefficient_bit(&mut self, s: PauliString) -> Result<u8> {
        self.check_string(s)?;
        let p = self.one_probability(s);
        self.queries += 1;
        Ok(u8::from(self.rng.random_bool(p)))
    }

    /// Number of ones among `count` independent bits. Costs `count` queries.
    pub fn sample_coefficient_ones(&mut self, s: PauliString, count: u64) -> Result<u64> {
        self.check_string(s)?;
        let p = self.one_probability(s);
        let dist = Binomial::new(count, p).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        self.queries += count;
        Ok(dist.sample(&mut self.rng))
    }

    /// Exact `Σ |Â_s|²` over strings whose first `len` letters form `prefix`.
    fn prefix_weight(&self, prefix: u64, len: usize) -> f64 {
        let shift = 2 * (self.n() - len) as u32;
        let lo = (prefix as u128) << shift;
        let hi = ((prefix as u128) + 1) << shift;
        let a = self.weights.partition_point(|w| (w.0 as u128) < lo);
        let b = self.weights.partition_point(|w| (w.0 as u128) < hi);
        (self.cumulative[b] - self.cumulative[a]).max(0.0)
    }

    /// Prefix weight corrupted with `N(0, 1/shots)` noise and clipped to `[0, 1]`.
    /// Costs `shots` queries.
    pub fn estimate_prefix_weight(&mut self, prefix: u64, len: usize, shots: u64) -> Result<f64> {
        if len > self.n() {
            return Err(Error::InvalidParameter(format!("prefix length {len} exceeds n = {}", self.n())));
        }
        if shots == 0 {
            return Err(Error::InvalidParameter("shots must be positive".into()));
        }
        let noise = Normal::new(0.0, (1.0 / shots as f64).sqrt()).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        self.queries += shots;
        Ok((self.prefix_weight(prefix, len) + noise.sample(&mut self.rng)).clamp(0.0, 1.0))
    }
}

fn check_unit_open(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {v}")));
    }
    Ok(())
}

/// Hoeffding sample size `⌈(2/η²) ln(2/δ)⌉` for one coefficient.
pub fn coefficient_sample_size(eta: f64, delta: f64) -> u64 {
    ((2.0 / (eta * eta)) * (2.0 / delta).ln()).ceil() as u64
}

/// Estimate of one coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEstimate {
    pub value: f64,
    pub samples: u64,
}

/// Mean of `1 - 2ε` over [`coefficient_sample_size`] bits; within `η` of `Â_s`
/// with probability at least `1 - δ`.
pub fn estimate_coefficient(oracle: &mut QueryOracle, s: PauliString, eta: f64, delta: f64) -> Result<CoefficientEstimate> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidParameter(format!("eta must lie in (0, 1], got {eta}")));
    }
    check_unit_open("delta", delta)?;
    let samples = coefficient_sample_size(eta, delta);
    let ones = oracle.sample_coefficient_ones(s, samples)?;
    Ok(CoefficientEstimate { value: 1.0 - 2.0 * ones as f64 / samples as f64, samples })
}

/// Result of [`goldreich_levin`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldreichLevinOutcome {
    pub list: Vec<PauliString>,
    pub gamma: f64,
    pub delta: f64,
    /// Noise level each weight estimate must stay within, `γ²/4`.
    pub tau: f64,
    pub shots: u64,
    /// Upper bound on the number of weight estimates used to size `shots`.
    pub estimate_budget: u64,
    pub estimates_used: u64,
    pub queries: u64,
    /// Every `s` with `|Â_s| ≥ γ` is listed.
    pub complete: bool,
    /// Every listed `s` has `|Â_s| ≥ γ/2`.
    pub sound: bool,
    /// Some level held more candidates than the list bound and was cut.
    pub truncated: bool,
}

impl GoldreichLevinOutcome {
    pub fn guarantees_hold(&self) -> bool {
        self.complete && self.sound
    }
}

/// Prefix search for the strings carrying large coefficients.
///
/// Candidates are prefixes over qubits `0..len`; a prefix survives while its
/// estimated subtree weight is at least `γ²/2`. Each estimate uses enough
/// shots that all of at most `1 + 4n⌊4/γ²⌋` estimates are within `γ²/4` with
/// probability `1 - δ`. Each level keeps at most `4·min(W, 1)/γ²` candidates,
/// `W` the estimated total weight plus `γ²/4`.
pub fn goldreich_levin(oracle: &mut QueryOracle, gamma: f64, delta: f64) -> Result<GoldreichLevinOutcome> {
    check_unit_open("gamma", gamma)?;
    check_unit_open("delta", delta)?;
    let n = oracle.n();
    let start = oracle.queries();
    let g2 = gamma * gamma;
    let tau = g2 / 4.0;
    let list_bound = (4.0 / g2).floor() as u64;
    let estimate_budget = 1 + 4 * n as u64 * list_bound;
    let shots = (2.0 * (2.0 * estimate_budget as f64 / delta).ln() / (tau * tau)).ceil() as u64;
    let keep = g2 / 2.0;

    let root = oracle.estimate_prefix_weight(0, 0, shots)?;
    let mut estimates_used = 1;
    let cap = ((4.0 * (root + tau).min(1.0) / g2).floor() as usize).max(1);
    let mut truncated = false;
    let mut level: Vec<u64> = if root >= keep { vec![0] } else { Vec::new() };
    for len in 1..=n {
        let mut next: Vec<(f64, u64)> = Vec::new();
        for &p in &level {
            for letter in 0..4u64 {
                let child = (p << 2) | letter;
                let w = oracle.estimate_prefix_weight(child, len, shots)?;
                estimates_used += 1;
                if w >= keep {
                    next.push((w, child));
                }
            }
        }
        if next.len() > cap {
            truncated = true;
            next.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            next.truncate(cap);
        }
        level = next.into_iter().map(|(_, c)| c).collect();
        level.sort_unstable();
    }
    let list: Vec<PauliString> = level.into_iter().map(|c| PauliString::from_index(n, c as usize)).collect();

    let listed: BTreeSet<u64> = list.iter().map(|s| s.code()).collect();
    let hidden = oracle.hidden();
    let complete = hidden.terms().iter().all(|(s, c)| c.norm() < gamma || listed.contains(&s.code()));
    let sound = list.iter().all(|&s| hidden.coeff(s).norm() >= gamma / 2.0);
    Ok(GoldreichLevinOutcome {
        list,
        gamma,
        delta,
        tau,
        shots,
        estimate_budget,
        estimates_used,
        queries: oracle.queries() - start,
        complete,
        sound,
        truncated,
    })
}

/// Parameters and derived quantities recorded with a [`LearnReport`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LearnParams {
    pub eps: f64,
    pub delta: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_hint: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c_d: Option<f64>,
    /// Per-coefficient precision.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples_per_coefficient: Option<u64>,
    pub coefficients_estimated: usize,
    /// Magnitude below which estimates are dropped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threshold: Option<f64>,
    /// `(ε² + 4^k γ²)^{1/2}`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error_bound: Option<f64>,
}

/// Outcome of one learning run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnReport {
    pub algorithm: String,
    pub n: usize,
    pub seed: u64,
    pub trial: u64,
    pub recovered: FourierOperator,
    /// `‖A - recovered‖₂` against the hidden operator.
    pub l2_error: f64,
    pub queries_used: u64,
    pub success: bool,
    /// The error bound held; `None` when the run has no deterministic bound.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<GoldreichLevinOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub estimates_within_eta: Option<bool>,
    pub params: LearnParams,
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Learns a quantum Boolean function close to a `k`-junta.
///
/// Runs [`goldreich_levin`] at `γ = ε 2^{-k}` (or the given `gamma`) with
/// half of `δ`, then estimates every listed coefficient to `η = ε/(2√|L|)`
/// with the other half split evenly. `success` means both search guarantees
/// held and every estimate was within `η`; on success
/// `‖A - A_L‖₂ ≤ (ε² + 4^k γ²)^{1/2}` is checked and recorded.
pub fn learn_qbf(
    oracle: &mut QueryOracle,
    eps: f64,
    delta: f64,
    k_hint: usize,
    gamma: Option<f64>,
) -> Result<LearnReport> {
    check_unit_open("eps", eps)?;
    check_unit_open("delta", delta)?;
    let gamma = gamma.unwrap_or(eps * 2f64.powi(-(k_hint as i32)));
    let start = oracle.queries();
    let search = goldreich_levin(oracle, gamma, delta / 2.0)?;
    let n = oracle.n();
    let m = search.list.len();
    let mut recovered = FourierOperator::zeros(n);
    let mut within = true;
    let mut eta = None;
    let mut samples = None;
    if m > 0 {
        let e = (eps / (2.0 * (m as f64).sqrt())).min(1.0);
        let delta_s = delta / (2.0 * m as f64);
        for &s in &search.list {
            let est = estimate_coefficient(oracle, s, e, delta_s)?;
            within &= (est.value - oracle.hidden().coeff(s).re).abs() <= e;
            recovered.set(s, real(est.value));
            samples = Some(est.samples);
        }
        eta = Some(e);
    }
    let l2_error = oracle.hidden().difference(&recovered)?.norm2_squared().sqrt();
    let error_bound = (eps * eps + 4f64.powi(k_hint as i32) * gamma * gamma).sqrt();
    let success = search.guarantees_hold() && within;
    let queries_used = oracle.queries() - start;
    Ok(LearnReport {
        algorithm: "qbf".into(),
        n,
        seed: oracle.seed(),
        trial: oracle.stream(),
        recovered,
        l2_error,
        queries_used,
        success,
        bound_holds: success.then_some(l2_error <= error_bound * (1.0 + 1e-12)),
        search: Some(search),
        estimates_within_eta: Some(within),
        params: LearnParams {
            eps,
            delta,
            gamma: Some(gamma),
            k_hint: Some(k_hint),
            eta,
            samples_per_coefficient: samples,
            coefficients_estimated: m,
            error_bound: Some(error_bound),
            ..Default::default()
        },
    })
}

/// Number of strings of weight at most `d` on `n` qubits, `Σ_{k≤d} C(n,k) 3^k`.
pub fn low_degree_string_count(n: usize, d: usize) -> u64 {
    let mut total = 0u64;
    let mut binom = 1u64;
    let mut pow3 = 1u64;
    for k in 0..=d.min(n) {
        total += binom * pow3;
        binom = binom * (n - k) as u64 / (k as u64 + 1);
        pow3 *= 3;
    }
    total
}

/// Samples per coefficient, `⌈e⁸ d² ε^{-(d+1)} C_d^{2d} ln(n/δ)⌉`, with `d²`
/// read as 1 at `d = 0`.
pub fn low_degree_sample_size(n: usize, d: usize, eps: f64, delta: f64, c_d: f64) -> u64 {
    let dd = d.max(1) as f64;
    let v = 8f64.exp() * dd * dd / eps.powi(d as i32 + 1) * c_d.powi(2 * d as i32) * (n as f64 / delta).ln();
    v.ceil() as u64
}

/// Learns an operator of degree at most `d`.
///
/// Every string of weight at most `d` is estimated from
/// [`low_degree_sample_size`] bits. Estimates below `b(1 + √(d+1))` are
/// dropped, `b = (2 ln(2M/δ)/N)^{1/2}` the simultaneous Hoeffding precision
/// for the `M` estimates. `success` means `‖H - A‖₂² ≤ ε`.
pub fn low_degree_learn(oracle: &mut QueryOracle, d: usize, eps: f64, delta: f64, c_d: f64) -> Result<LearnReport> {
    check_unit_open("delta", delta)?;
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    if !(c_d >= 1.0 && c_d.is_finite()) {
        return Err(Error::InvalidParameter(format!("C_d must be a finite constant at least 1, got {c_d}")));
    }
    let found = oracle.hidden().degree(0.0);
    if found > d {
        return Err(Error::DegreeExceeded { found, bound: d });
    }
    let n = oracle.n();
    let start = oracle.queries();
    let samples = low_degree_sample_size(n, d, eps, delta, c_d);
    let strings = crate::ensembles::strings_up_to_weight(n, d, &[1, 2, 3]);
    let m = strings.len();
    let b = (2.0 * (2.0 * m as f64 / delta).ln() / samples as f64).sqrt();
    let threshold = b * (1.0 + ((d + 1) as f64).sqrt());
    let mut recovered = FourierOperator::zeros(n);
    for s in strings {
        let ones = oracle.sample_coefficient_ones(s, samples)?;
        let alpha = 1.0 - 2.0 * ones as f64 / samples as f64;
        if alpha.abs() >= threshold {
            recovered.set(s, real(alpha));
        }
    }
    let sq = oracle.hidden().difference(&recovered)?.norm2_squared();
    Ok(LearnReport {
        algorithm: "low_degree".into(),
        n,
        seed: oracle.seed(),
        trial: oracle.stream(),
        recovered,
        l2_error: sq.sqrt(),
        queries_used: oracle.queries() - start,
        success: sq <= eps,
        bound_holds: None,
        search: None,
        estimates_within_eta: None,
        params: LearnParams {
            eps,
            delta,
            degree: Some(d),
            c_d: Some(c_d),
            eta: Some(b),
            samples_per_coefficient: Some(samples),
            coefficients_estimated: m,
            threshold: Some(threshold),
            ..Default::default()
        },
    })
}

/// `(Σ_s |Â_s|^{2d/(d+1)})^{(d+1)/2d} / ‖A‖_∞` for `A` of degree at most `d ≥ 1`.
pub fn bh_ratio(f: &FourierOperator, d: usize, tol: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let found = f.degree(tol);
    if found > d {
        return Err(Error::DegreeExceeded { found, bound: d });
    }
    let q = 2.0 * d as f64 / (d as f64 + 1.0);
    let lhs = f.terms().iter().map(|(_, c)| c.norm().powf(q)).sum::<f64>().powf(1.0 / q);
    let norm = linalg::operator_norm(to_dense(f).matrix());
    if norm == 0.0 {
        return Err(Error::InvalidParameter("zero operator".into()));
    }
    Ok(lhs / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::dictator;
    use approx::assert_abs_diff_eq;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn oracle(f: FourierOperator, seed: u64) -> QueryOracle {
        QueryOracle::new(f, seed, 0, 1e-9).unwrap()
    }

    #[test]
    fn bits_of_signed_paulis() {
        let s = ps("13");
        let mut o = oracle(FourierOperator::pauli(s), 1);
        assert!((0..100).all(|_| o.sample_coefficient_bit(s).unwrap() == 0));
        let mut o = oracle(FourierOperator::pauli(s).scaled(real(-1.0)), 1);
        assert!((0..100).all(|_| o.sample_coefficient_bit(s).unwrap() == 1));
        assert_eq!(o.queries(), 100);
    }

    #[test]
    fn zero_coefficient_is_unbiased() {
        let mut o = oracle(FourierOperator::pauli(ps("30")), 7);
        let s = ps("11");
        let draws = 100_000;
        let mean: f64 = (0..draws).map(|_| 1.0 - 2.0 * o.sample_coefficient_bit(s).unwrap() as f64).sum::<f64>() / draws as f64;
        assert!(mean.abs() < 0.02, "{mean}");
    }

    #[test]
    fn oracle_rejects_bad_hidden() {
        let f = FourierOperator::pauli(ps("3")).scaled(real(1.5));
        assert!(QueryOracle::new(f, 0, 0, 1e-9).is_err());
        let f = FourierOperator::pauli(ps("3")).scaled(Complex64::new(0.0, 1.0));
        assert!(QueryOracle::new(f, 0, 0, 1e-9).is_err());
    }

    #[test]
    fn estimate_of_pauli_is_exact() {
        let s = ps("203");
        let mut o = oracle(FourierOperator::pauli(s), 3);
        let e = estimate_coefficient(&mut o, s, 0.1, 0.05).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.samples, coefficient_sample_size(0.1, 0.05));
        assert_eq!(o.queries(), e.samples);
        let e = estimate_coefficient(&mut o, ps("000"), 1.0, 0.5).unwrap();
        assert!(e.value.abs() <= 1.0);
    }

    #[test]
    fn estimate_failure_rate() {
        let s = ps("3");
        let f = FourierOperator::from_terms(1, [(ps("0"), real(0.5)), (s, real(0.5))]).unwrap();
        let mut o = oracle(f, 11);
        let fails = (0..200).filter(|_| (estimate_coefficient(&mut o, s, 0.1, 0.05).unwrap().value - 0.5).abs() > 0.1).count();
        assert!(fails <= 10 + 6, "{fails}");
    }

    #[test]
    fn prefix_weights_partition() {
        let f = FourierOperator::from_terms(
            3,
            [(ps("300"), real(0.6)), (ps("310"), real(0.0)), (ps("102"), real(0.8))],
        )
        .unwrap();
        let o = oracle(f, 0);
        assert_abs_diff_eq!(o.prefix_weight(0, 0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(o.prefix_weight(3, 1), 0.36, epsilon = 1e-15);
        assert_abs_diff_eq!(o.prefix_weight(1, 1), 0.64, epsilon = 1e-15);
        assert_abs_diff_eq!(o.prefix_weight(0b0100, 2), 0.64, epsilon = 1e-15);
        assert_abs_diff_eq!(o.prefix_weight(0b010010, 3), 0.64, epsilon = 1e-15);
        assert_eq!(o.prefix_weight(0b0011, 2), 0.0);
        assert_eq!(o.prefix_weight(0, 1), 0.0);
    }

    #[test]
    fn search_finds_single_pauli() {
        let u = ps("0213");
        let mut o = oracle(FourierOperator::pauli(u), 5);
        let r = goldreich_levin(&mut o, 0.5, 0.1).unwrap();
        assert_eq!(r.list, vec![u]);
        assert!(r.guarantees_hold());
        assert_eq!(r.queries, r.estimates_used * r.shots);
    }

    #[test]
    fn search_finds_two_strings() {
        let (u, v) = (ps("10"), ps("30"));
        let c = real(std::f64::consts::FRAC_1_SQRT_2);
        let mut o = oracle(FourierOperator::from_terms(2, [(u, c), (v, c)]).unwrap(), 9);
        let r = goldreich_levin(&mut o, 0.5, 0.1).unwrap();
        assert_eq!(r.list, vec![u, v]);
        assert!(r.guarantees_hold());
    }

    #[test]
    fn learns_dictator_and_identity() {
        let mut o = oracle(dictator(6, 0).unwrap(), 2);
        let r = learn_qbf(&mut o, 0.3, 0.1, 1, None).unwrap();
        assert!(r.success);
        assert_eq!(r.bound_holds, Some(true));
        assert!(r.l2_error <= 1e-6);
        let mut o = oracle(FourierOperator::identity(3), 2);
        let r = learn_qbf(&mut o, 0.3, 0.1, 1, None).unwrap();
        assert_eq!(r.recovered, FourierOperator::identity(3));
        assert_eq!(r.l2_error, 0.0);
    }

    #[test]
    fn low_degree_exact_on_pauli() {
        let mut o = oracle(FourierOperator::pauli(ps("0100")), 4);
        let r = low_degree_learn(&mut o, 1, 0.2, 0.1, 1.0).unwrap();
        assert!(r.success);
        assert_eq!(r.recovered, FourierOperator::pauli(ps("0100")));
        let per = low_degree_sample_size(4, 1, 0.2, 0.1, 1.0);
        assert_eq!(r.queries_used, per * low_degree_string_count(4, 1));
        let mut o = oracle(FourierOperator::pauli(ps("0110")), 4);
        assert!(matches!(low_degree_learn(&mut o, 1, 0.2, 0.1, 1.0), Err(Error::DegreeExceeded { .. })));
    }

    #[test]
    fn low_degree_zero() {
        let mut o = oracle(FourierOperator::identity(2).scaled(real(0.7)), 4);
        let r = low_degree_learn(&mut o, 0, 0.2, 0.1, 1.0).unwrap();
        assert!(r.success);
        assert_eq!(r.params.coefficients_estimated, 1);
    }

    #[test]
    fn string_count() {
        assert_eq!(low_degree_string_count(5, 2), 1 + 15 + 90);
        assert_eq!(low_degree_string_count(2, 5), 16);
        assert_eq!(low_degree_string_count(3, 0), 1);
    }

    #[test]
    fn bh_examples() {
        assert_abs_diff_eq!(bh_ratio(&FourierOperator::pauli(ps("12")), 2, 1e-12).unwrap(), 1.0, epsilon = 1e-12);
        let f = FourierOperator::from_terms(2, [(ps("30"), real(0.5)), (ps("03"), real(0.5))]).unwrap();
        assert_abs_diff_eq!(bh_ratio(&f, 1, 1e-12).unwrap(), 1.0, epsilon = 1e-12);
        assert!(bh_ratio(&FourierOperator::pauli(ps("33")), 1, 1e-12).is_err());
        assert!(bh_ratio(&f, 0, 1e-12).is_err());
    }
}
