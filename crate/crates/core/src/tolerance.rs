// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

/// Numerical tolerances used for support, Boolean-ness and ordering decisions.
///
/// Every check in the crate takes its thresholds from one of these fields so a
/// run can be reproduced exactly from its serialized configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Coefficients with magnitude at or below this are treated as zero.
    pub support: f64,
    /// Residual allowed in `A = A*` and `A^2 = 1`.
    pub boolean: f64,
    /// Relative slack for PSD orderings, scaled by `‖A‖²`.
    pub psd: f64,
    /// Absolute slack for scalar inequalities.
    pub inequality: f64,
    /// Eigenvalues below this magnitude count as zero in spectral calculus.
    pub zero_eigenvalue: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            support: 1e-10,
            boolean: 1e-10,
            psd: 1e-9,
            inequality: 1e-9,
            zero_eigenvalue: 1e-12,
        }
    }
}
