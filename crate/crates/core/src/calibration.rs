// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Empirical constants measured on seeded ensembles.
//!
//! Several inequalities carry an unspecified universal constant. The sweeps
//! here measure the largest implied constant on a reproducible ensemble, and
//! the pinned values were produced by running them once at
//! [`CALIBRATION_SEED`].

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::{dictator, instance_rng, majority, parity, perturbed_dictator, random_low_degree, random_qbf};
use crate::error::Result;
use crate::inequalities::talagrand_l1;
use crate::learn::bh_ratio;
use crate::pauli::{to_dense, DenseOperator, FourierOperator};

pub const CALIBRATION_SEED: u64 = 20_240_917;

/// A pinned empirical constant and the run that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PinnedConstant {
    pub value: f64,
    /// Largest ratio seen in the calibration run, before rounding up.
    pub observed: f64,
    pub seed: u64,
    pub instances: u64,
    pub ensemble: &'static str,
}

/// Talagrand constant: `Var(A) ≤ C Σ_j Inf¹_j(1 + Inf¹_j)/(1 + log⁺(1/Inf¹_j))^{1/2}`
/// over [`balanced_qbf`] instances, `n ∈ {2..6}`.
pub const TALAGRAND_C_EMP: PinnedConstant = PinnedConstant {
    value: 0.58,
    observed: 0.578315507132239,
    seed: CALIBRATION_SEED,
    instances: 1000,
    ensemble: "balanced_qbf",
};

/// Bohnenblust–Hille ratio at degree 2 over [`bh_instance`] with diagonal
/// operators, `n ∈ {2..6}`.
pub const BH_C_2: PinnedConstant = PinnedConstant {
    value: 1.24,
    observed: 1.2319666371499358,
    seed: CALIBRATION_SEED,
    instances: 500,
    ensemble: "random_low_degree(diagonal, d = 2)",
};

/// Smallest and largest register size of the balanced ensemble.
pub const BALANCED_N: (usize, usize) = (2, 6);

/// Balanced quantum Boolean instance `index` of the seeded mixture.
///
/// `n` cycles through [`BALANCED_N`]; by `(index / 5) mod 10` the instance is a
/// dictator, parity, majority (odd `n`, else a perturbed dictator), a
/// perturbed dictator of strength uniform in `[0, 0.6)`, or a random `2P - 1`
/// with `rank P = 2^{n-1}`.
pub fn balanced_qbf(seed: u64, index: u64) -> Result<(&'static str, DenseOperator)> {
    let span = (BALANCED_N.1 - BALANCED_N.0 + 1) as u64;
    let n = BALANCED_N.0 + (index % span) as usize;
    let mut rng = instance_rng(seed, index);
    let kind = (index / span) % 10;
    Ok(match kind {
        0 => ("dictator", to_dense(&dictator(n, ((index / 10) % n as u64) as usize)?)),
        1 => ("parity", to_dense(&parity(n)?)),
        2 if n % 2 == 1 => ("majority", to_dense(&majority(n)?)),
        2..=5 => {
            let strength = rng.random_range(0.0..0.6);
            ("perturbed_dictator", perturbed_dictator(n, strength, &mut rng)?)
        }
        _ => ("random_qbf", random_qbf(n, 1 << (n - 1), &mut rng)?),
    })
}

/// Random degree-`d` instance `index`, `n` cycling through `{max(d, 2)..6}`.
pub fn bh_instance(seed: u64, index: u64, d: usize, diagonal: bool) -> Result<FourierOperator> {
    let lo = d.max(2);
    let n = lo + (index % (7 - lo as u64).max(1)) as usize;
    let mut rng = instance_rng(seed, index);
    random_low_degree(n, d, diagonal, &mut rng)
}

/// Largest value of a sweep and where it occurred.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepMaximum {
    pub seed: u64,
    pub instances: u64,
    pub max: f64,
    pub argmax: u64,
    pub label: String,
    /// Instances whose ratio was not finite.
    pub non_finite: u64,
}

/// Largest Talagrand implied constant over `count` [`balanced_qbf`] instances.
pub fn talagrand_sweep(seed: u64, count: u64) -> Result<SweepMaximum> {
    let values: Vec<(u64, &'static str, Option<f64>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let (label, a) = balanced_qbf(seed, i)?;
            Ok((i, label, talagrand_l1(&a).implied_constant))
        })
        .collect::<Result<_>>()?;
    Ok(maximum(seed, count, values.into_iter()))
}

/// Largest [`bh_ratio`] over `count` [`bh_instance`] operators.
pub fn bh_sweep(seed: u64, count: u64, d: usize, diagonal: bool) -> Result<SweepMaximum> {
    let values: Vec<(u64, &'static str, Option<f64>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let f = bh_instance(seed, i, d, diagonal)?;
            Ok((i, "random_low_degree", Some(bh_ratio(&f, d, 1e-12)?)))
        })
        .collect::<Result<_>>()?;
    Ok(maximum(seed, count, values.into_iter()))
}

fn maximum(seed: u64, count: u64, values: impl Iterator<Item = (u64, &'static str, Option<f64>)>) -> SweepMaximum {
    let mut out = SweepMaximum { seed, instances: count, max: f64::NEG_INFINITY, argmax: 0, label: String::new(), non_finite: 0 };
    for (i, label, v) in values {
        match v {
            Some(v) if v.is_finite() => {
                if v > out.max {
                    out.max = v;
                    out.argmax = i;
                    out.label = label.into();
                }
            }
            _ => out.non_finite += 1,
        }
    }
    out
}
