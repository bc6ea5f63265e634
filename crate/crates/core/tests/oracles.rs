// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Closed forms, brute-force classical computations and values frozen from an
//! independent numpy/scipy evaluation.

use std::f64::consts::{LN_2, PI, SQRT_2};

use approx::assert_abs_diff_eq;

use qbool_core::ensembles::{classical_embed, commutator_influence_bound, dictator, majority, parity};
use qbool_core::inequalities::{
    integral_lemma_check, isoperimetry_check, kkl_max_influence, lemma_aux_kkl, poincare_l1, strong_poincare_l1,
    talagrand_l1, AuxKklOutcome,
};
use qbool_core::junta::{junta_bound, BoundVariant, ExtractionBranch};
use qbool_core::learn::goldreich_levin;
use qbool_core::semigroup::{check_djpt_bound, check_gradient_estimate, check_hypercontractivity, check_smoothing, apply_semigroup, generator};
use qbool_core::weighted::general_poincare_l1;
use qbool_core::{
    bh_ratio, friedgut_extract, learn_qbf, pauli_matrix, profile, schatten_norm, to_dense, to_fourier, Complex64, DMatrix,
    DenseOperator, FourierOperator, PauliString, QueryOracle, Tolerances, WeightedContext,
};

fn ps(s: &str) -> PauliString {
    s.parse().unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn majority3(x: usize) -> f64 {
    // Bit 2 - j of the index is variable j; 0 maps to +1.
    let ones = x.count_ones();
    if ones >= 2 {
        -1.0
    } else {
        1.0
    }
}

#[test]
fn schatten_norms_of_diag_two_zero() {
    let a = DenseOperator::from_diagonal(1, &[2.0, 0.0]).unwrap();
    assert_abs_diff_eq!(schatten_norm(&a, 1.0).unwrap().value, 1.0, epsilon = 1e-14);
    assert_abs_diff_eq!(schatten_norm(&a, 2.0).unwrap().value, SQRT_2, epsilon = 1e-14);
    assert_abs_diff_eq!(schatten_norm(&a, f64::INFINITY).unwrap().value, 2.0, epsilon = 1e-14);
}

#[test]
fn majority_walsh_coefficients_by_brute_force() {
    let table: Vec<f64> = (0..8).map(majority3).collect();
    let f = to_fourier(&to_dense(&classical_embed(3, &table).unwrap()));
    for mask in 0..8usize {
        let walsh: f64 = (0..8).map(|x| table[x] * if (x & mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 }).sum::<f64>() / 8.0;
        let letters: Vec<u8> = (0..3).map(|j| if mask >> (2 - j) & 1 == 1 { 3 } else { 0 }).collect();
        let s = PauliString::new(&letters).unwrap();
        assert_abs_diff_eq!(f.coeff(s).re, walsh, epsilon = 1e-14);
        assert_abs_diff_eq!(f.coeff(s).im, 0.0, epsilon = 1e-14);
    }
    for s in ["300", "030", "003"] {
        assert_abs_diff_eq!(f.coeff(ps(s)).re, 0.5, epsilon = 1e-14);
    }
    assert_abs_diff_eq!(f.coeff(ps("333")).re, -0.5, epsilon = 1e-14);
    assert_eq!(majority(3).unwrap().max_abs_diff(&f) <= 1e-14, true);
}

#[test]
fn majority_influences_match_flip_probability() {
    let table: Vec<f64> = (0..8).map(majority3).collect();
    let prof = profile(&classical_embed(3, &table).unwrap());
    for j in 0..3 {
        let flips = (0..8usize).filter(|&x| table[x] != table[x ^ (1 << (2 - j))]).count() as f64 / 8.0;
        assert_abs_diff_eq!(flips, 0.5, epsilon = 0.0);
        assert_abs_diff_eq!(prof.inf1[j], flips, epsilon = 1e-12);
        assert_abs_diff_eq!(prof.inf2[j], flips, epsilon = 1e-12);
    }
    // ±1-valued with mean zero: ‖A‖₁ = 1 against π · 3/2.
    let r = poincare_l1(&to_dense(&majority(3).unwrap()), &Tolerances::default());
    assert_abs_diff_eq!(r.implied_constant.unwrap(), 2.0 / (3.0 * PI), epsilon = 1e-12);
}

#[test]
fn generator_matches_finite_difference() {
    let f = FourierOperator::from_terms(2, [(ps("31"), c(0.7, 0.0)), (ps("20"), c(0.0, 0.4)), (ps("00"), c(1.0, 0.0))]).unwrap();
    let lf = generator(&f);
    let diff = |h: f64| f.difference(&apply_semigroup(&f, h).unwrap()).unwrap().scaled(c(1.0 / h, 0.0));
    let (e4, e5) = (diff(1e-4).max_abs_diff(&lf), diff(1e-5).max_abs_diff(&lf));
    assert!(e4 < 1e-3 && e5 < 1e-4, "{e4} {e5}");
    assert!(e4 / e5 > 5.0, "first-order convergence expected");
    let richardson = diff(1e-5).scaled(c(2.0, 0.0)).difference(&diff(2e-5)).unwrap();
    assert!(richardson.max_abs_diff(&lf) < 1e-8);
}

#[test]
fn single_qubit_semigroup_closed_forms() {
    let tol = Tolerances::default();
    let z = pauli_matrix(ps("3"));
    let fz = to_fourier(&z);
    let h = check_hypercontractivity(&fz, 1.0, &tol).unwrap();
    assert_abs_diff_eq!(h.lhs, (-1.0f64).exp(), epsilon = 1e-13);
    assert_abs_diff_eq!(h.rhs, 1.0, epsilon = 1e-13);

    for t in [0.1, 0.5, 1.0, 2.0] {
        let g = check_gradient_estimate(&z, t, &tol).unwrap();
        assert_abs_diff_eq!(g.slack, (-t).exp() - (-2.0 * t).exp(), epsilon = 1e-12);
        let s = check_smoothing(&fz, t, &tol).unwrap();
        assert_abs_diff_eq!(s.lhs, (1.0 - (-t).exp()).powi(2), epsilon = 1e-13);
        assert_abs_diff_eq!(s.rhs, t, epsilon = 1e-13);
    }
    let d = check_djpt_bound(&z, LN_2, &tol).unwrap();
    assert_abs_diff_eq!(d.lhs, 0.25, epsilon = 1e-12);
    assert_abs_diff_eq!(d.rhs, 1.0, epsilon = 1e-12);
}

#[test]
fn strong_chain_on_sigma_three() {
    let s = strong_poincare_l1(&pauli_matrix(ps("3")), &Tolerances::default());
    assert!(s.chain_holds());
    assert_abs_diff_eq!(s.report.lhs, 1.0, epsilon = 1e-13);
    assert_abs_diff_eq!(PI * s.middle, PI, epsilon = 1e-12);
    assert_abs_diff_eq!(s.right, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(s.report.extra["sqrt2_pi_right"], SQRT_2 * PI, epsilon = 1e-12);
}

#[test]
fn talagrand_and_kkl_arithmetic() {
    let a = pauli_matrix(ps("30"));
    let r = talagrand_l1(&a);
    assert_abs_diff_eq!(r.lhs, 1.0, epsilon = 1e-13);
    assert_abs_diff_eq!(r.rhs_without_constant, 2.0, epsilon = 1e-13);

    let k = kkl_max_influence(&to_dense(&parity(4).unwrap()), &Tolerances::default()).unwrap();
    assert_abs_diff_eq!(k.lhs, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(k.rhs_without_constant, 4f64.ln().sqrt() / 4.0, epsilon = 1e-14);
    // Holds for C up to 4/√(ln 4) = 3.397.
    assert!(k.lhs >= 3.39 * k.rhs_without_constant);
    assert!(k.lhs < 3.4 * k.rhs_without_constant);

    match lemma_aux_kkl(&[1.0; 8], 16.0).unwrap() {
        AuxKklOutcome::Checked { max, bound, holds } => {
            assert_eq!(max, 1.0);
            assert_abs_diff_eq!(bound, 8f64.ln().sqrt() / 8.0, epsilon = 1e-15);
            assert!(holds);
        }
        other => panic!("{other:?}"),
    }
    let n = 10usize;
    let a = vec![1.0 / n as f64; n];
    let c_sum = n as f64 * (1.0 / n as f64) * (1.0 + 1.0 / n as f64) / (1.0 + (n as f64).ln()).sqrt();
    assert_eq!(lemma_aux_kkl(&a, c_sum * (1.0 - 1e-12)).unwrap().holds(), Some(true));
}

#[test]
fn integral_lemma_frozen_quadrature() {
    // scipy.integrate.quad at epsabs 1e-14.
    for (alpha, a, r, frozen) in [
        (1.0, 1.0, 0.5, 1.2686004387857566),
        (2.0, 0.01, 0.25, 0.5128420682002578),
        (0.5, 3.0, 1.0, 2.287806051202144),
    ] {
        let rep = integral_lemma_check(alpha, a, r).unwrap();
        assert_abs_diff_eq!(rep.integral, frozen, epsilon = 1e-9);
    }
    assert!(integral_lemma_check(1.0, 1.0, 0.5).unwrap().integral <= SQRT_2);
}

#[test]
fn isoperimetry_of_half_space() {
    let p = DenseOperator::identity(2).sum(&pauli_matrix(ps("30"))).unwrap().scaled(c(0.5, 0.0));
    let r = isoperimetry_check(&p, &Tolerances::default()).unwrap();
    assert_abs_diff_eq!(r.extra["tau"], 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(r.lhs, 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(r.rhs_without_constant, 0.25 * 8f64.ln().sqrt(), epsilon = 1e-14);
}

#[test]
fn junta_bound_arithmetic_and_dictator() {
    assert_abs_diff_eq!(junta_bound(1.0, 1.0, 2.0, BoundVariant::General).unwrap(), 1.0, epsilon = 1e-12);
    let expected = 4.0 * (48.0 * LN_2).exp();
    assert_abs_diff_eq!(junta_bound(2.0, 1.0, 1.0, BoundVariant::General).unwrap() / expected, 1.0, epsilon = 1e-12);

    let f = dictator(5, 0).unwrap();
    let r = friedgut_extract(&f, 2.0).unwrap();
    assert_eq!(r.averaged.iter().copied().collect::<Vec<_>>(), [1, 2, 3, 4]);
    assert_eq!(r.k_actual, 1);
    assert_eq!(r.branch, ExtractionBranch::Threshold);
    assert_eq!(r.error_l2, 0.0);
    assert_abs_diff_eq!(r.k_bound, 1.0, epsilon = 1e-12);
}

#[test]
fn commutator_bound_of_sigma_three() {
    let a = pauli_matrix(ps("030"));
    let b = commutator_influence_bound(&a, 1, 1e-12).unwrap();
    assert_abs_diff_eq!(b.lhs, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(b.rhs, 1.0, epsilon = 1e-12);
    assert!(b.holds);
}

#[test]
fn zero_coefficient_bits_are_fair() {
    let hidden = FourierOperator::pauli(ps("30"));
    let mut oracle = QueryOracle::new(hidden, 42, 0, 1e-9).unwrap();
    let draws = 100_000;
    let mut sum = 0i64;
    for _ in 0..draws {
        sum += 1 - 2 * i64::from(oracle.sample_coefficient_bit(ps("13")).unwrap());
    }
    assert!((sum as f64 / draws as f64).abs() < 0.02);
    assert_eq!(oracle.queries(), draws);
}

#[test]
fn search_lists_both_halves_of_a_balanced_pair() {
    let h = 1.0 / SQRT_2;
    let hidden = FourierOperator::from_terms(3, [(ps("100"), c(h, 0.0)), (ps("300"), c(h, 0.0))]).unwrap();
    let mut oracle = QueryOracle::new(hidden, 9, 0, 1e-9).unwrap();
    let out = goldreich_levin(&mut oracle, 0.5, 0.1).unwrap();
    assert_eq!(out.list, [ps("100"), ps("300")]);
    assert!(out.complete && out.sound);
}

#[test]
fn dictator_is_learned_exactly() {
    let hidden = dictator(6, 0).unwrap();
    let mut oracle = QueryOracle::new(hidden.clone(), 1, 0, 1e-9).unwrap();
    let r = learn_qbf(&mut oracle, 0.3, 0.1, 1, None).unwrap();
    assert!(r.success);
    assert!(r.l2_error <= 1e-6);
    assert!(r.recovered.max_abs_diff(&hidden) <= 1e-6);
}

#[test]
fn bh_ratio_of_two_site_average() {
    let f = FourierOperator::from_terms(2, [(ps("30"), c(0.5, 0.0)), (ps("03"), c(0.5, 0.0))]).unwrap();
    assert_abs_diff_eq!(bh_ratio(&f, 1, 1e-12).unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn kms_norms_frozen_for_off_diagonal_state() {
    let omega = DMatrix::from_row_slice(2, 2, &[c(0.6, 0.0), c(0.1, 0.1), c(0.1, -0.1), c(0.4, 0.0)]);
    let ctx = WeightedContext::new(&omega, 1).unwrap();
    let x = pauli_matrix(ps("1"));
    // numpy: (Σ sv(ω^{1/2p} x ω^{1/2p})^p)^{1/p} via scipy.linalg.fractional_matrix_power.
    for (p, frozen) in [(1.0, 0.9591663046625438), (1.5, 0.9723666518867244), (2.0, 0.9791435550060004), (3.0, 0.9860185621383947)] {
        assert_abs_diff_eq!(ctx.kms_norm(&x, p).unwrap(), frozen, epsilon = 1e-12);
    }
    assert_abs_diff_eq!(ctx.kms_norm(&x, f64::INFINITY).unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn weighted_closed_forms() {
    for q in [0.2, 0.5, 0.7] {
        let ctx = WeightedContext::diagonal(q, 1).unwrap();
        let z = pauli_matrix(ps("3"));
        assert_abs_diff_eq!(ctx.kms_norm(&z, 1.0).unwrap(), 1.0, epsilon = 1e-13);
        let expected = z.difference(&DenseOperator::identity(1).scaled(c(2.0 * q - 1.0, 0.0))).unwrap();
        assert!(ctx.d_j(&z, 0).unwrap().max_abs_diff(&expected) < 1e-14);
        assert_abs_diff_eq!(ctx.spectral_gap(), 1.0, epsilon = 1e-10);
    }
    let ctx = WeightedContext::tracial(1);
    let r = general_poincare_l1(&ctx, &pauli_matrix(ps("3")), 1e-9).unwrap();
    assert_abs_diff_eq!(r.lhs, 0.5, epsilon = 1e-13);
    assert_abs_diff_eq!(r.rhs_without_constant, PI / 2.0, epsilon = 1e-13);
}

#[test]
fn near_singular_state_reports_condition_number() {
    let ctx = WeightedContext::diagonal(1.0 - 1e-6, 1).unwrap();
    assert!((ctx.condition_number() - (1.0 - 1e-6) / 1e-6).abs() < 1e-3);
}
