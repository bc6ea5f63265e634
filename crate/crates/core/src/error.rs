// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by operator construction, analysis and learning routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("invalid Schatten exponent p = {0}; need p >= 1")]
    InvalidExponent(f64),

    #[error("invalid Pauli string {0:?}")]
    InvalidPauliString(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operator is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),

    #[error(
        "operator is not a quantum Boolean function \
         (hermitian residual {hermitian:.3e}, square residual {square:.3e})"
    )]
    NotQuantumBoolean { hermitian: f64, square: f64 },

    #[error("operator is not balanced (normalized trace {0:.3e})")]
    NotBalanced(f64),

    #[error("operator is not a projector (residual {0:.3e})")]
    NotProjector(f64),

    #[error("operator has degree {found}, exceeding the declared bound {bound}")]
    DegreeExceeded { found: usize, bound: usize },

    #[error("coefficient magnitude {0:.6} exceeds 1; hidden operator cannot be sampled")]
    CoefficientOutOfRange(f64),

    #[error("reference state is not a full-rank density matrix: {0}")]
    InvalidState(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
