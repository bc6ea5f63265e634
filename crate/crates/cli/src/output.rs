// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use qbool_core::InequalityReport;

use crate::args::Format;

/// One CSV line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    pub n: usize,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub implied_constant: Option<f64>,
}

impl Row {
    pub fn new(name: impl Into<String>, n: usize, seed: u64, lhs: f64, rhs: f64) -> Self {
        let implied_constant = (rhs > 0.0).then(|| lhs / rhs);
        Self { name: name.into(), n, seed, lhs, rhs, implied_constant }
    }

    pub fn from_report(r: &InequalityReport, seed: u64) -> Self {
        Self {
            name: r.name.clone(),
            n: r.n,
            seed: r.seed.unwrap_or(seed),
            lhs: r.lhs,
            rhs: r.rhs_without_constant,
            implied_constant: r.implied_constant,
        }
    }
}

/// Anything that can be written as a JSON line and flattened to CSV rows.
pub trait Record {
    fn json(&self) -> Result<serde_json::Value>;
    fn rows(&self) -> Vec<Row>;
}

pub enum Sink {
    Json(Box<dyn Write>),
    Csv(csv::Writer<Box<dyn Write>>),
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format) -> Result<Self> {
        let w: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(match format {
            Format::Json => Self::Json(w),
            Format::Csv => Self::Csv(csv::Writer::from_writer(w)),
        })
    }

    pub fn write(&mut self, record: &dyn Record) -> Result<()> {
        match self {
            Self::Json(w) => {
                serde_json::to_writer(&mut *w, &record.json()?)?;
                w.write_all(b"\n")?;
            }
            Self::Csv(w) => {
                for row in record.rows() {
                    w.serialize(row)?;
                }
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<()> {
        match self {
            Self::Json(mut w) => w.flush()?,
            Self::Csv(mut w) => w.flush()?,
        }
        Ok(())
    }
}

/// A serializable value paired with its CSV rows.
pub struct Tabled<T: Serialize> {
    pub value: T,
    pub rows: Vec<Row>,
}

impl<T: Serialize> Record for Tabled<T> {
    fn json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(&self.value)?)
    }

    fn rows(&self) -> Vec<Row> {
        self.rows.clone()
    }
}

/// An inequality report; `asserted` marks whether a violation fails the run.
pub struct Checked {
    pub report: InequalityReport,
    pub asserted: bool,
}

impl Checked {
    pub fn asserted(report: InequalityReport) -> Self {
        Self { report, asserted: true }
    }

    pub fn reported(report: InequalityReport) -> Self {
        Self { report, asserted: false }
    }

    pub fn failed(&self) -> bool {
        self.asserted && self.report.satisfied == Some(false)
    }
}

impl Record for Checked {
    fn json(&self) -> Result<serde_json::Value> {
        let mut v = serde_json::to_value(&self.report)?;
        v["asserted"] = self.asserted.into();
        Ok(v)
    }

    fn rows(&self) -> Vec<Row> {
        vec![Row::from_report(&self.report, self.report.seed.unwrap_or(0))]
    }
}

/// Writes a warning record to stderr; warnings never change the exit status.
pub fn warn(message: &str) {
    let line = serde_json::json!({ "warning": message });
    let _ = writeln!(io::stderr(), "{line}");
}
