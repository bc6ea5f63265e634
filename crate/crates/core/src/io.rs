// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! JSON operator files: `{"n": 2, "coeffs": [{"s": "31", "re": 1.0, "im": 0.0}]}`.
//!
//! Strings that are absent have coefficient zero. Floats are written with the
//! shortest representation that parses back to the same `f64`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{FourierOperator, PauliString};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub s: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub n: usize,
    pub coeffs: Vec<CoefficientEntry>,
}

impl From<&FourierOperator> for OperatorFile {
    fn from(f: &FourierOperator) -> Self {
        let coeffs = f
            .terms()
            .into_iter()
            .map(|(s, c)| CoefficientEntry { s: s.to_string(), re: c.re, im: c.im })
            .collect();
        Self { n: f.n(), coeffs }
    }
}

impl TryFrom<OperatorFile> for FourierOperator {
    type Error = Error;

    fn try_from(file: OperatorFile) -> Result<Self> {
        let mut terms = Vec::with_capacity(file.coeffs.len());
        for e in &file.coeffs {
            let s: PauliString = e.s.parse()?;
            if s.n() != file.n {
                return Err(Error::InvalidPauliString(format!(
                    "{:?} has length {}, expected {}",
                    e.s,
                    s.n(),
                    file.n
                )));
            }
            terms.push((s, Complex64::new(e.re, e.im)));
        }
        FourierOperator::from_terms(file.n, terms)
    }
}

impl Serialize for FourierOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FourierOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = OperatorFile::deserialize(deserializer)?;
        FourierOperator::try_from(file).map_err(serde::de::Error::custom)
    }
}

/// Pauli strings serialize as their digit string, e.g. `"0312"`.
impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn operator_to_json(f: &FourierOperator) -> Result<String> {
    Ok(serde_json::to_string(f)?)
}

pub fn operator_from_json(text: &str) -> Result<FourierOperator> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_operator(path: &Path) -> std::io::Result<FourierOperator> {
    let text = std::fs::read_to_string(path)?;
    operator_from_json(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

pub fn write_operator(path: &Path, f: &FourierOperator) -> std::io::Result<()> {
    let text = operator_to_json(f).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
    std::fs::write(path, text + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bitwise() {
        let f = FourierOperator::from_terms(
            2,
            [
                ("31".parse().unwrap(), Complex64::new(0.1 + 0.2, -1e-300)),
                ("02".parse().unwrap(), Complex64::new(std::f64::consts::PI, 0.0)),
            ],
        )
        .unwrap();
        let text = operator_to_json(&f).unwrap();
        let back = operator_from_json(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn wrong_length_rejected() {
        let text = r#"{"n": 2, "coeffs": [{"s": "3", "re": 1.0, "im": 0.0}]}"#;
        assert!(operator_from_json(text).is_err());
    }

    #[test]
    fn omitted_strings_are_zero() {
        let text = r#"{"n": 1, "coeffs": []}"#;
        assert_eq!(operator_from_json(text).unwrap().nnz(), 0);
    }
}
