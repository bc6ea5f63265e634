// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! `qbool`: batch front end for the analysis library.
//!
//! Exit status is 1 when an asserted inequality fails, 2 on usage or I/O
//! errors, and 0 otherwise. Report-only quantities never fail a run; they emit
//! warning records on stderr.

mod args;
mod commands;
mod output;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::Parser;

use qbool_core::Tolerances;

use args::{Calibration, Cli, Command, RunConfig};
use commands::Outcome;
use output::Sink;

fn tolerances(tol: f64) -> Tolerances {
    Tolerances { psd: tol, inequality: tol, ..Tolerances::default() }
}

fn resolve(cli: Cli) -> Result<RunConfig> {
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut config: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing run configuration {}", path.display()))?;
        if cli.global.out.is_some() {
            config.global.out = cli.global.out;
        }
        return Ok(config);
    }
    let command = cli.command.context("a subcommand or --config is required")?;
    Ok(RunConfig { global: cli.global, command, calibration: Calibration::default() })
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    let g = &config.global;
    let tol = tolerances(g.tol);
    match &config.command {
        Command::Analyze(a) => commands::analyze(a, g.seed, &tol),
        Command::Verify(a) => Ok(Outcome::from_checks(verify::run(a, g.seed, &tol, &config.calibration)?)),
        Command::Junta(a) => commands::junta(a, g.seed, &tol),
        Command::Learn(a) => commands::learn(a, g.seed, &tol, &config.calibration),
        Command::Ensemble(a) => commands::ensemble(a, g.seed),
        Command::Weighted(a) => commands::weighted(a, g.seed, g.tol),
        Command::Dynamics(a) => commands::dynamics(a, g.seed, &tol),
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn write_sidecar(out: &Path, outcome: &Outcome) -> Result<()> {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let meta = serde_json::json!({
        "finished_unix_seconds": secs,
        "version": env!("CARGO_PKG_VERSION"),
        "records": outcome.records.len(),
        "asserted_failures": outcome.failures,
    });
    std::fs::write(sidecar_path(out), serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(())
}

fn run(cli: Cli) -> Result<usize> {
    let save = cli.save_config.clone();
    let config = resolve(cli)?;
    if let Some(path) = save {
        std::fs::write(&path, serde_json::to_string_pretty(&config)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let outcome = dispatch(&config)?;
    let mut sink = Sink::open(config.global.out.as_deref(), config.global.format)?;
    for r in &outcome.records {
        sink.write(r.as_ref())?;
    }
    sink.finish()?;
    if let Some(out) = &config.global.out {
        write_sidecar(out, &outcome)?;
    }
    Ok(outcome.failures)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} asserted check(s) failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
