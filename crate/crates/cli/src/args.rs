// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qbool_core::calibration::{PinnedConstant, BH_C_2, TALAGRAND_C_EMP};
use qbool_core::ensembles::Family;

#[derive(Parser, Debug)]
#[command(name = "qbool", version, about = "Fourier analysis of quantum Boolean functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    /// Replay a stored run configuration instead of parsing a subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Store the effective run configuration before running.
    #[arg(long, global = true, value_name = "FILE")]
    pub save_config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Slack for asserted scalar and PSD inequalities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Report file; standard output when absent.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything needed to rerun an invocation bit for bit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub global: GlobalArgs,
    pub command: Command,
    pub calibration: Calibration,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Calibration {
    pub talagrand_c_emp: PinnedValue,
    pub bh_c_2: PinnedValue,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PinnedValue {
    pub value: f64,
    pub provenance: String,
}

impl From<PinnedConstant> for PinnedValue {
    fn from(c: PinnedConstant) -> Self {
        Self {
            value: c.value,
            provenance: format!(
                "max {} over {} {} instances at seed {}, rounded up",
                c.observed, c.instances, c.ensemble, c.seed
            ),
        }
    }
}

impl Default for Calibration {
    fn default() -> Self {
        Self { talagrand_c_emp: TALAGRAND_C_EMP.into(), bh_c_2: BH_C_2.into() }
    }
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Influence profile and inequality reports for one operator file.
    Analyze(AnalyzeArgs),
    /// Run an inequality suite over a seeded ensemble.
    Verify(VerifyArgs),
    /// Extract a junta approximation from an operator file.
    Junta(JuntaArgs),
    /// Learn a hidden operator through a simulated query oracle.
    Learn(LearnArgs),
    /// Write ensemble elements as operator files.
    Ensemble(EnsembleArgs),
    /// Check the weighted semigroup axioms for a product reference state.
    Weighted(WeightedArgs),
    /// Influence spread of a Hamiltonian-evolved Pauli, or a semigroup trajectory.
    Dynamics(DynamicsArgs),
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct AnalyzeArgs {
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Poincare,
    StrongPoincare,
    Semigroup,
    Gamma,
    Friedgut,
    Talagrand,
    Kkl,
    Isoperimetry,
    Bh,
    All,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,

    /// Register sizes, `a..b` (inclusive) or a single value; instances cycle through them.
    #[arg(long, default_value = "1..4")]
    pub n: NRange,

    #[arg(long, default_value_t = 100)]
    pub trials: u64,

    /// Degrees for the `bh` suite.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub degree: Vec<usize>,
}

/// Inclusive range of register sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub fn at(&self, i: u64) -> usize {
        self.lo + (i % (self.hi - self.lo + 1) as u64) as usize
    }

    pub fn clamped(&self, lo: usize, hi: usize) -> anyhow::Result<Self> {
        let r = Self { lo: self.lo.max(lo), hi: self.hi.min(hi) };
        anyhow::ensure!(r.lo <= r.hi, "--n {}..{} is outside the supported range {lo}..{hi}", self.lo, self.hi);
        Ok(r)
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad register size {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("empty or zero register range {s:?}"));
        }
        Ok(Self { lo, hi })
    }
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct JuntaArgs {
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,

    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,

    /// Round the junta to a quantum Boolean function (input must be Boolean).
    #[arg(long)]
    pub boolean: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct LearnArgs {
    #[arg(long, value_name = "FILE")]
    pub hidden: PathBuf,

    /// Search threshold; defaults to `eps · 2^{-k}`.
    #[arg(long)]
    pub gamma: Option<f64>,

    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,

    #[arg(long, default_value_t = 0.3)]
    pub eps: f64,

    /// Junta size promise; defaults to the support size of the hidden operator.
    #[arg(long)]
    pub k: Option<usize>,

    /// Switch to the low-degree learner with this degree bound.
    #[arg(long)]
    pub degree: Option<usize>,

    /// Constant for the low-degree sample size; defaults to the pinned value at degree 2.
    #[arg(long)]
    pub cd: Option<f64>,

    #[arg(long, default_value_t = 1)]
    pub trials: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    Dictator,
    Parity,
    Majority,
    Tribes,
    RandomQbf,
    RandomHermitian,
    RandomProjector,
    EvolvedPauli,
    RandomJunta,
    PerturbedDictator,
    RandomLowDegree,
    RandomOperator,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Dictator => Family::Dictator,
            FamilyArg::Parity => Family::Parity,
            FamilyArg::Majority => Family::Majority,
            FamilyArg::Tribes => Family::Tribes,
            FamilyArg::RandomQbf => Family::RandomQbf,
            FamilyArg::RandomHermitian => Family::RandomHermitian,
            FamilyArg::RandomProjector => Family::RandomProjector,
            FamilyArg::EvolvedPauli => Family::EvolvedPauli,
            FamilyArg::RandomJunta => Family::RandomJunta,
            FamilyArg::PerturbedDictator => Family::PerturbedDictator,
            FamilyArg::RandomLowDegree => Family::RandomLowDegree,
            FamilyArg::RandomOperator => Family::RandomOperator,
        }
    }
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct EnsembleArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,

    #[arg(long)]
    pub n: usize,

    /// First element index.
    #[arg(long, default_value_t = 0)]
    pub index: u64,

    /// Number of elements, one JSON document per line.
    #[arg(long, default_value_t = 1)]
    pub count: u64,

    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub site: Option<usize>,
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long)]
    pub strength: Option<f64>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub diagonal: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct WeightedArgs {
    /// Diagonal parameter `q` for `diag(q, 1 - q)`, or a 2×2 JSON matrix with
    /// real entries or `[re, im]` pairs.
    #[arg(long, default_value = "0.7")]
    pub omega: String,

    #[arg(long, default_value_t = 2)]
    pub n: usize,

    /// Random operators per check.
    #[arg(long, default_value_t = 12)]
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainModel {
    Ising,
    Heisenberg,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct DynamicsArgs {
    /// Run the depolarizing semigroup on this operator instead of a Hamiltonian evolution.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,

    #[arg(long, default_value_t = 4)]
    pub n: usize,

    #[arg(long, value_enum, default_value_t = ChainModel::Ising)]
    pub model: ChainModel,

    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,

    #[arg(long, default_value_t = 1.0)]
    pub field: f64,

    #[arg(long, default_value_t = 0)]
    pub site: usize,

    /// Pauli letter 1, 2 or 3.
    #[arg(long, default_value_t = 3)]
    pub pauli: u8,

    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,1,2")]
    pub times: Vec<f64>,
}
