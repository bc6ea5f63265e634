// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Seeded inequality suites behind `qbool verify`.
//!
//! Element `i` of every suite depends only on `(seed, i)`, and results are
//! merged in index order, so reruns are byte-identical regardless of the
//! thread count.

use anyhow::Result;
use rand::Rng;
use rayon::prelude::*;

use qbool_core::calibration::{balanced_qbf, bh_instance};
use qbool_core::ensembles::{dictator, instance_rng, parity, perturbed_dictator, random_hermitian, random_junta, random_projector, random_qbf};
use qbool_core::inequalities::{isoperimetry_check, kkl_max_influence, poincare_l1, strong_poincare_l1, talagrand_l1};
use qbool_core::semigroup::{
    carre_du_champ, check_djpt_bound, check_gradient_estimate, check_hypercontractivity, check_intertwining, check_smoothing,
    derivation_square_sum, SemigroupCheckReport,
};
use qbool_core::{bh_ratio, boolean_junta, friedgut_extract, schatten_norm, to_dense, to_fourier, Complex64, DenseOperator, InequalityReport, Tolerances};

use crate::args::{Calibration, Suite, VerifyArgs};
use crate::output::{warn, Checked};

pub const SEMIGROUP_TIMES: [f64; 5] = [0.01, 0.1, 0.5, 1.0, 2.0];
pub const FRIEDGUT_EPS: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

pub fn run(args: &VerifyArgs, seed: u64, tol: &Tolerances, calibration: &Calibration) -> Result<Vec<Checked>> {
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Poincare,
            Suite::StrongPoincare,
            Suite::Semigroup,
            Suite::Gamma,
            Suite::Friedgut,
            Suite::Talagrand,
            Suite::Kkl,
            Suite::Isoperimetry,
            Suite::Bh,
        ],
        s => vec![s],
    };
    let mut out = Vec::new();
    for suite in suites {
        out.extend(run_suite(suite, args, seed, tol, calibration)?);
    }
    Ok(out)
}

fn indexed<F>(trials: u64, f: F) -> Result<Vec<Checked>>
where
    F: Fn(u64) -> Result<Vec<Checked>> + Sync + Send,
{
    let parts: Vec<Vec<Checked>> = (0..trials).into_par_iter().map(f).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

fn tag(r: InequalityReport, seed: u64, ensemble: &str) -> InequalityReport {
    r.with_metadata(Some(seed), Some(ensemble))
}

/// Random Hermitian operators at even indices, random QBFs of uniform rank at odd ones.
fn mixed_instance(seed: u64, i: u64, n: usize) -> Result<(&'static str, DenseOperator)> {
    let mut rng = instance_rng(seed, i);
    if i % 2 == 0 {
        Ok(("random_hermitian", random_hermitian(n, &mut rng)))
    } else {
        let rank = rng.random_range(0..=(1usize << n));
        Ok(("random_qbf", random_qbf(n, rank, &mut rng)?))
    }
}

fn qbf_instance(seed: u64, i: u64, n: usize) -> Result<(&'static str, DenseOperator)> {
    let mut rng = instance_rng(seed, i);
    Ok(match i % 5 {
        0 => ("dictator", to_dense(&dictator(n, rng.random_range(0..n))?)),
        1 => ("parity", to_dense(&parity(n)?)),
        2 if n >= 2 => {
            let a = rng.random_range(0..n);
            let b = (a + 1 + rng.random_range(0..n - 1)) % n;
            ("random_junta", to_dense(&random_junta(n, &[a, b], rng.random_range(1..4), &mut rng)?))
        }
        3 => ("perturbed_dictator", perturbed_dictator(n, rng.random_range(0.0..0.5), &mut rng)?),
        _ => {
            let rank = rng.random_range(0..=(1usize << n));
            ("random_qbf", random_qbf(n, rank, &mut rng)?)
        }
    })
}

fn semigroup_report(c: SemigroupCheckReport, n: usize) -> InequalityReport {
    let mut r = InequalityReport::new(&c.name, n, c.lhs, c.rhs);
    r.constant = Some(1.0);
    r.satisfied = Some(c.satisfied);
    r.extra.insert("t".into(), c.t);
    r.extra.insert("slack".into(), c.slack);
    r
}

fn run_suite(suite: Suite, args: &VerifyArgs, seed: u64, tol: &Tolerances, calibration: &Calibration) -> Result<Vec<Checked>> {
    let ns = args.n;
    let trials = args.trials;
    match suite {
        Suite::Poincare => indexed(trials, |i| {
            let (label, a) = mixed_instance(seed, i, ns.at(i))?;
            Ok(vec![Checked::asserted(tag(poincare_l1(&a, tol), seed, label))])
        }),
        Suite::StrongPoincare => indexed(trials, |i| {
            let (label, a) = mixed_instance(seed, i, ns.at(i))?;
            let s = strong_poincare_l1(&a, tol);
            let mut r = tag(s.report.clone(), seed, label);
            r.name = "strong_poincare_l1".into();
            r.satisfied = Some(s.chain_holds());
            r.extra.insert("middle".into(), s.middle);
            r.extra.insert("right".into(), s.right);
            Ok(vec![Checked::asserted(r)])
        }),
        Suite::Semigroup => {
            let ns = ns.clamped(1, 6)?;
            indexed(trials, |i| {
                let (label, a) = mixed_instance(seed, i, ns.at(i))?;
                let f = to_fourier(&a);
                let n = a.n();
                let mut out = Vec::new();
                for &t in &SEMIGROUP_TIMES {
                    for c in [
                        check_hypercontractivity(&f, t, tol)?,
                        check_gradient_estimate(&a, t, tol)?,
                        check_djpt_bound(&a, t, tol)?,
                        check_smoothing(&f, t, tol)?,
                    ] {
                        out.push(Checked::asserted(tag(semigroup_report(c, n), seed, label)));
                    }
                    for j in 0..n {
                        let mut c = check_intertwining(&f, t, j)?;
                        c.satisfied = c.lhs <= 1e-14;
                        out.push(Checked::asserted(tag(semigroup_report(c, n), seed, label)));
                    }
                }
                Ok(out)
            })
        }
        Suite::Gamma => {
            let ns = ns.clamped(1, 6)?;
            indexed(trials, |i| {
                let (label, a) = mixed_instance(seed, i, ns.at(i))?;
                let two_gamma = carre_du_champ(&a).scaled(Complex64::new(2.0, 0.0));
                let min_eig = two_gamma.difference(&derivation_square_sum(&a))?.min_eigenvalue();
                let scale = schatten_norm(&a, f64::INFINITY)?.value.powi(2);
                let mut r = InequalityReport::new("gamma_dominates_derivations", a.n(), -min_eig, 0.0);
                r.constant = Some(1.0);
                r.satisfied = Some(min_eig >= -tol.psd * scale);
                Ok(vec![Checked::asserted(tag(r, seed, label))])
            })
        }
        Suite::Friedgut => {
            let ns = ns.clamped(1, 8)?;
            indexed(trials, |i| {
                let (label, a) = qbf_instance(seed, i, ns.at(i))?;
                let f = to_fourier(&a);
                let n = a.n();
                let mut out = Vec::new();
                for &eps in &FRIEDGUT_EPS {
                    let r = friedgut_extract(&f, eps)?;
                    let mut err = InequalityReport::new("friedgut_error", n, r.error_l2, eps).with_constant(1.0, 0.0);
                    err.extra.insert("eps".into(), eps);
                    let mut size = InequalityReport::new("friedgut_size", n, r.k_actual as f64, r.k_bound).with_constant(1.0, 0.0);
                    size.extra.insert("eps".into(), eps);
                    let c = boolean_junta(&a, eps, tol)?;
                    let mut b = InequalityReport::new("boolean_junta_error", n, c.error_l2, eps).with_constant(1.0, 0.0);
                    b.satisfied = Some(b.satisfied == Some(true) && c.square_residual <= 1e-10 && c.support_ok);
                    b.extra.insert("square_residual".into(), c.square_residual);
                    for r in [err, size, b] {
                        out.push(Checked::asserted(tag(r, seed, label)));
                    }
                }
                Ok(out)
            })
        }
        Suite::Talagrand => {
            let pinned = calibration.talagrand_c_emp.value;
            let out = indexed(trials, |i| {
                let (label, a) = balanced_qbf(seed, i)?;
                Ok(vec![Checked::reported(tag(talagrand_l1(&a), seed, label))])
            })?;
            for c in &out {
                match c.report.implied_constant {
                    Some(v) if v > pinned => warn(&format!("talagrand_l1 implied constant {v} exceeds pinned {pinned}")),
                    None => warn("talagrand_l1 right side vanished"),
                    _ => {}
                }
            }
            Ok(out)
        }
        Suite::Kkl => indexed(trials, |i| {
            let (label, a) = balanced_qbf(seed, i)?;
            Ok(vec![Checked::reported(tag(kkl_max_influence(&a, tol)?, seed, label))])
        }),
        Suite::Isoperimetry => {
            let ns = ns.clamped(1, 8)?;
            indexed(trials, |i| {
                let n = ns.at(i);
                let mut rng = instance_rng(seed, i);
                let rank = rng.random_range(1..(1usize << n));
                let p = random_projector(n, rank, &mut rng)?;
                Ok(vec![Checked::reported(tag(isoperimetry_check(&p, tol)?, seed, "random_projector"))])
            })
        }
        Suite::Bh => {
            let mut out = Vec::new();
            for &d in &args.degree {
                out.extend(indexed(trials, |i| {
                    let f = bh_instance(seed, i, d, false)?;
                    let ratio = bh_ratio(&f, d, 1e-12)?;
                    let mut r = InequalityReport::new(&format!("bh_ratio_d{d}"), f.n(), ratio, 1.0);
                    r.extra.insert("degree".into(), d as f64);
                    Ok(vec![Checked::reported(tag(r, seed, "random_low_degree"))])
                })?);
            }
            Ok(out)
        }
        Suite::All => unreachable!("expanded by run"),
    }
}

