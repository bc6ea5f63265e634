// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! The bit-flip analogues `d_j` and the `L^p` influences built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{schatten_norm, to_dense, DenseOperator, FourierOperator};
use crate::sites;

fn check_qubit(n: usize, j: usize) -> Result<()> {
    if j >= n {
        return Err(Error::QubitOutOfRange { index: j, n });
    }
    Ok(())
}

/// `d_j(A) = Σ_{s_j ≠ 0} Â_s σ_s`.
pub fn d_j(f: &FourierOperator, j: usize) -> Result<FourierOperator> {
    check_qubit(f.n(), j)?;
    Ok(f.filtered(|s| s.acts_on(j)))
}

/// `d_j` on a dense matrix, computed as `A - (tr_j(A)/2) ⊗ 1_j`.
pub fn d_j_dense(a: &DenseOperator, j: usize) -> Result<DenseOperator> {
    check_qubit(a.n(), j)?;
    let m = sites::site_derivation(a.matrix(), a.n(), j, &sites::MAXIMALLY_MIXED);
    Ok(DenseOperator::from_parts(a.n(), m))
}

/// `Inf^p_j(A) = ‖d_j A‖_p^p` with the normalized Schatten norm.
///
/// `p = 2` is evaluated exactly from the coefficients; other exponents go
/// through the spectrum of the dense `d_j A`.
pub fn influence(f: &FourierOperator, j: usize, p: f64) -> Result<f64> {
    let dj = d_j(f, j)?;
    if p == 2.0 {
        return Ok(dj.norm2_squared());
    }
    Ok(schatten_norm(&to_dense(&dj), p)?.value.powf(p))
}

/// Per-qubit `L¹` and `L²` influences of one operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfluenceProfile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub inf1: Vec<f64>,
    pub inf2: Vec<f64>,
    pub total1: f64,
    pub total2: f64,
    /// Qubit of largest `Inf¹_j`, lowest index on ties.
    pub argmax1: usize,
}

impl InfluenceProfile {
    fn from_parts(inf1: Vec<f64>, inf2: Vec<f64>) -> Self {
        let total1 = inf1.iter().sum();
        let total2 = inf2.iter().sum();
        let argmax1 = argmax_lowest(&inf1);
        Self { n: Some(inf1.len()), inf1, inf2, total1, total2, argmax1 }
    }

    pub fn max1(&self) -> f64 {
        self.inf1.get(self.argmax1).copied().unwrap_or(0.0)
    }

    pub fn max2(&self) -> f64 {
        self.inf2.iter().copied().fold(0.0, f64::max)
    }
}

fn argmax_lowest(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

/// Full influence profile. `Inf¹` uses the spectrum of each dense `d_j A`,
/// `Inf²` the coefficient sums.
pub fn profile(f: &FourierOperator) -> InfluenceProfile {
    let dense = to_dense(f);
    profile_with_dense(f, &dense)
}

/// [`profile`] when the dense form is already at hand.
pub fn profile_with_dense(f: &FourierOperator, dense: &DenseOperator) -> InfluenceProfile {
    let n = f.n();
    let mut inf2 = vec![0.0; n];
    for (s, c) in f.terms() {
        let w = c.norm_sqr();
        for j in s.support() {
            inf2[j] += w;
        }
    }
    let inf1 = (0..n).map(|j| l1_influence_dense(dense, j)).collect();
    InfluenceProfile::from_parts(inf1, inf2)
}

/// `‖d_j A‖₁` from the dense matrix alone.
pub fn l1_influence_dense(a: &DenseOperator, j: usize) -> f64 {
    let dj = sites::site_derivation(a.matrix(), a.n(), j, &sites::MAXIMALLY_MIXED);
    let sv = crate::linalg::singular_values(&dj);
    crate::pauli::schatten_from_singular_values(&sv, 1.0)
}

/// `‖d_j A‖₂²` from the dense matrix alone.
pub fn l2_influence_dense(a: &DenseOperator, j: usize) -> f64 {
    let dj = sites::site_derivation(a.matrix(), a.n(), j, &sites::MAXIMALLY_MIXED);
    dj.iter().map(|z| z.norm_sqr()).sum::<f64>() / a.dim() as f64
}
