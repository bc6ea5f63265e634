// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Fourier analysis of quantum Boolean functions on qubit registers.

pub mod calibration;
pub mod ensembles;
pub mod error;
pub mod inequalities;
pub mod influence;
pub mod io;
pub mod junta;
pub mod learn;
pub mod pauli;
pub mod semigroup;
pub mod tolerance;
pub mod weighted;

mod linalg;
mod sites;

pub use error::{Error, Result};
pub use influence::{d_j, influence, profile, InfluenceProfile};
pub use inequalities::InequalityReport;
pub use junta::{boolean_junta, friedgut_extract, junta_bound, sign_round, JuntaResult};
pub use learn::{bh_ratio, learn_qbf, low_degree_learn, LearnReport, QueryOracle};
pub use pauli::{
    inner, inner_fourier, is_quantum_boolean, partial_average, partial_average_dense, pauli_matrix,
    schatten_norm, support_of, to_dense, to_fourier, variance, BooleanCheck, DenseOperator,
    FourierOperator, NormValue, PauliString,
};
pub use tolerance::Tolerances;
pub use weighted::WeightedContext;

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;
