// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Seeded inputs shared by the benchmarks.

use qbool_core::ensembles::{instance_rng, random_junta, random_operator, random_qbf};
use qbool_core::{DenseOperator, FourierOperator};

pub const SEED: u64 = 0x5eed;

pub fn dense_operator(n: usize) -> DenseOperator {
    random_operator(n, &mut instance_rng(SEED, n as u64))
}

/// Balanced random quantum Boolean function.
pub fn boolean_operator(n: usize) -> DenseOperator {
    random_qbf(n, 1 << (n - 1), &mut instance_rng(SEED, 100 + n as u64)).expect("rank is in range")
}

/// Quantum Boolean 2-junta on qubits 0 and 1.
pub fn hidden_junta(n: usize) -> FourierOperator {
    random_junta(n, &[0, 1], 2, &mut instance_rng(SEED, 200 + n as u64)).expect("n >= 2")
}
