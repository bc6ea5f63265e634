// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

use anyhow::{bail, ensure, Context, Result};
use serde::Serialize;
use serde_json::json;

use qbool_core::ensembles::{commutator_influence_bound, evolved_pauli, EnsembleParams, EnsembleSpec, HamiltonianSpec};
use qbool_core::inequalities::{isoperimetry_check, kkl_max_influence, poincare_l1, strong_poincare_l1, talagrand_l1};
use qbool_core::io::read_operator;
use qbool_core::semigroup::{apply_semigroup, check_hypercontractivity, check_poincare_contraction, check_smoothing};
use qbool_core::weighted::{verify_axioms, AxiomConfig, AxiomReport};
use qbool_core::{
    boolean_junta, friedgut_extract, is_quantum_boolean, learn_qbf, low_degree_learn, profile, support_of, to_dense,
    to_fourier, variance, Complex64, DMatrix, DenseOperator, FourierOperator, LearnReport, QueryOracle, Tolerances,
    WeightedContext,
};

use crate::args::{AnalyzeArgs, Calibration, ChainModel, DynamicsArgs, EnsembleArgs, JuntaArgs, LearnArgs, WeightedArgs};
use crate::output::{warn, Checked, Record, Row, Tabled};

/// Records of one subcommand and how many asserted checks failed.
pub struct Outcome {
    pub records: Vec<Box<dyn Record>>,
    pub failures: usize,
}

impl Outcome {
    fn single(record: impl Record + 'static, failed: bool) -> Self {
        Self { records: vec![Box::new(record)], failures: failed as usize }
    }

    pub fn from_checks(checks: Vec<Checked>) -> Self {
        let failures = checks.iter().filter(|c| c.failed()).count();
        Self { records: checks.into_iter().map(|c| Box::new(c) as Box<dyn Record>).collect(), failures }
    }
}

fn load(path: &std::path::Path) -> Result<FourierOperator> {
    read_operator(path).with_context(|| format!("reading operator file {}", path.display()))
}

pub fn analyze(args: &AnalyzeArgs, seed: u64, tol: &Tolerances) -> Result<Outcome> {
    let f = load(&args.input)?;
    let a = to_dense(&f);
    let prof = profile(&f);
    let boolean = is_quantum_boolean(&a, tol.boolean);
    let summary = json!({
        "kind": "profile",
        "n": f.n(),
        "mean": [f.mean().re, f.mean().im],
        "variance": variance(&f),
        "degree": f.degree(tol.support),
        "support": support_of(&f, tol.support),
        "quantum_boolean": boolean.is_boolean,
        "profile": prof,
    });
    let rows = (0..f.n())
        .flat_map(|j| [Row::new(format!("inf1_q{j}"), f.n(), seed, prof.inf1[j], 1.0), Row::new(format!("inf2_q{j}"), f.n(), seed, prof.inf2[j], 1.0)])
        .collect();
    let mut checks = vec![Checked::asserted(poincare_l1(&a, tol))];
    let strong = strong_poincare_l1(&a, tol);
    let mut chain = strong.report.clone();
    chain.name = "strong_poincare_l1".into();
    chain.satisfied = Some(strong.chain_holds());
    checks.push(Checked::asserted(chain));
    if boolean.is_boolean {
        checks.push(Checked::reported(talagrand_l1(&a)));
        checks.push(Checked::reported(kkl_max_influence(&a, tol)?));
        let projector = a.sum(&DenseOperator::identity(a.n()))?.scaled(Complex64::new(0.5, 0.0));
        checks.push(Checked::reported(isoperimetry_check(&projector, tol)?));
    }
    let mut out = Outcome::from_checks(checks);
    out.records.insert(0, Box::new(Tabled { value: summary, rows }));
    Ok(out)
}

pub fn junta(args: &JuntaArgs, seed: u64, tol: &Tolerances) -> Result<Outcome> {
    let f = load(&args.input)?;
    let n = f.n();
    if args.boolean {
        let c = boolean_junta(&to_dense(&f), args.eps, tol)?;
        let ok = c.error_certified && c.support_ok && c.square_residual <= tol.boolean;
        let value = json!({
            "eps": args.eps,
            "C": to_fourier(&c.operator),
            "error_l2": c.error_l2,
            "k_bound": c.k_bound,
            "square_residual": c.square_residual,
            "support_ok": c.support_ok,
            "error_certified": c.error_certified,
            "extraction": c.extraction,
        });
        let rows = vec![
            Row::new("boolean_junta_error", n, seed, c.error_l2, args.eps),
            Row::new("boolean_junta_size", n, seed, c.extraction.k_actual as f64, c.k_bound),
        ];
        return Ok(Outcome::single(Tabled { value, rows }, !ok));
    }
    let r = friedgut_extract(&f, args.eps)?;
    for w in &r.warnings {
        warn(w);
    }
    let rows = vec![
        Row::new("friedgut_error", n, seed, r.error_l2, args.eps),
        Row::new("friedgut_size", n, seed, r.k_actual as f64, r.k_bound),
    ];
    let failed = !r.certified();
    Ok(Outcome::single(Tabled { value: r, rows }, failed))
}

fn learn_rows(r: &LearnReport, eps: f64) -> Vec<Row> {
    let mut rows = vec![Row::new(format!("{}_error", r.algorithm), r.n, r.seed, r.l2_error, eps)];
    rows.push(Row::new(format!("{}_queries", r.algorithm), r.n, r.seed, r.queries_used as f64, 0.0));
    rows
}

pub fn learn(args: &LearnArgs, seed: u64, tol: &Tolerances, calibration: &Calibration) -> Result<Outcome> {
    let hidden = load(&args.hidden)?;
    let mut records: Vec<Box<dyn Record>> = Vec::new();
    let mut failures = 0;
    for trial in 0..args.trials {
        let mut oracle = QueryOracle::new(hidden.clone(), seed, trial, tol.boolean)?;
        let report = match args.degree {
            Some(d) => {
                let c_d = match (args.cd, d) {
                    (Some(c), _) => c,
                    (None, 2) => calibration.bh_c_2.value,
                    (None, _) => bail!("no pinned constant for degree {d}; pass --cd"),
                };
                low_degree_learn(&mut oracle, d, args.eps, args.delta, c_d)?
            }
            None => {
                let k = args.k.unwrap_or_else(|| support_of(&hidden, tol.support).len());
                let r = learn_qbf(&mut oracle, args.eps, args.delta, k, args.gamma)?;
                let search_sound = r.search.as_ref().is_none_or(|s| s.sound);
                if r.success && (r.bound_holds == Some(false) || !search_sound) {
                    failures += 1;
                }
                r
            }
        };
        if !report.success {
            warn(&format!("trial {trial}: {} did not reach the target error", report.algorithm));
        }
        let rows = learn_rows(&report, args.eps);
        records.push(Box::new(Tabled { value: report, rows }));
    }
    Ok(Outcome { records, failures })
}

pub fn ensemble(args: &EnsembleArgs, seed: u64) -> Result<Outcome> {
    let params = EnsembleParams {
        rank: args.rank,
        width: args.width,
        time: args.time,
        site: args.site,
        strength: args.strength,
        degree: args.degree,
        diagonal: args.diagonal.then_some(true),
        ..Default::default()
    };
    let spec = EnsembleSpec::new(args.family.into(), args.n, seed).with_params(params);
    let mut records: Vec<Box<dyn Record>> = Vec::new();
    for index in args.index..args.index + args.count {
        let f = spec.fourier(index)?;
        let rows = f
            .terms()
            .into_iter()
            .map(|(s, c)| Row { name: s.to_string(), n: f.n(), seed, lhs: c.re, rhs: c.im, implied_constant: None })
            .collect();
        records.push(Box::new(Tabled { value: f, rows }));
    }
    Ok(Outcome { records, failures: 0 })
}

/// `"q"` for `diag(q, 1 - q)`, or a JSON 2×2 matrix of reals or `[re, im]` pairs.
pub fn parse_omega(text: &str) -> Result<DMatrix<Complex64>> {
    if let Ok(q) = text.trim().parse::<f64>() {
        ensure!(q > 0.0 && q < 1.0, "diagonal parameter must lie in (0, 1), got {q}");
        let zero = Complex64::new(0.0, 0.0);
        return Ok(DMatrix::from_row_slice(2, 2, &[Complex64::new(q, 0.0), zero, zero, Complex64::new(1.0 - q, 0.0)]));
    }
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Real(f64),
        Pair([f64; 2]),
    }
    let rows: Vec<Vec<Entry>> = serde_json::from_str(text).context("--omega is neither a number nor a JSON 2x2 matrix")?;
    ensure!(rows.len() == 2 && rows.iter().all(|r| r.len() == 2), "--omega must be 2x2");
    Ok(DMatrix::from_fn(2, 2, |i, j| match rows[i][j] {
        Entry::Real(x) => Complex64::new(x, 0.0),
        Entry::Pair([re, im]) => Complex64::new(re, im),
    }))
}

fn axiom_rows(r: &AxiomReport, seed: u64) -> Vec<Row> {
    r.checks
        .iter()
        .map(|c| Row { name: c.name.clone(), n: r.n, seed, lhs: c.worst_slack, rhs: 0.0, implied_constant: Some(c.constant) })
        .collect()
}

pub fn weighted(args: &WeightedArgs, seed: u64, tol: f64) -> Result<Outcome> {
    let omega = parse_omega(&args.omega)?;
    let ctx = WeightedContext::new(&omega, args.n)?;
    let cfg = AxiomConfig { samples: args.samples, seed, tol, ..Default::default() };
    let report = verify_axioms(&ctx, &cfg)?;
    for c in report.checks.iter().filter(|c| !c.satisfied) {
        let kind = if c.asserted { "asserted" } else { "reported" };
        warn(&format!("{kind} check {} failed, worst slack {}", c.name, c.worst_slack));
    }
    let failures = report.failed().len();
    let rows = axiom_rows(&report, seed);
    Ok(Outcome { records: vec![Box::new(Tabled { value: report, rows })], failures })
}

#[derive(Serialize)]
struct EvolutionStep {
    kind: &'static str,
    n: usize,
    t: f64,
    variance: f64,
    inf1: Vec<f64>,
    inf2: Vec<f64>,
    commutator_bounds: Vec<qbool_core::ensembles::CommutatorBound>,
    variance_preserved: bool,
}

#[derive(Serialize)]
struct SemigroupStep {
    kind: &'static str,
    n: usize,
    t: f64,
    variance: f64,
    total_inf2: f64,
    checks: Vec<qbool_core::semigroup::SemigroupCheckReport>,
}

pub fn dynamics(args: &DynamicsArgs, seed: u64, tol: &Tolerances) -> Result<Outcome> {
    let mut records: Vec<Box<dyn Record>> = Vec::new();
    let mut failures = 0;
    if let Some(path) = &args.input {
        let f = load(path)?;
        let n = f.n();
        for &t in &args.times {
            let pt = apply_semigroup(&f, t)?;
            let checks = vec![check_hypercontractivity(&f, t, tol)?, check_smoothing(&f, t, tol)?, check_poincare_contraction(&f, t, tol)?];
            failures += checks.iter().filter(|c| !c.satisfied).count();
            let rows = checks.iter().map(|c| Row::new(c.name.clone(), n, seed, c.lhs, c.rhs)).collect();
            let step = SemigroupStep { kind: "semigroup", n, t, variance: variance(&pt), total_inf2: profile(&pt).total2, checks };
            records.push(Box::new(Tabled { value: step, rows }));
        }
        return Ok(Outcome { records, failures });
    }
    ensure!(args.site < args.n, "--site {} is outside a {}-qubit chain", args.site, args.n);
    let spec = match args.model {
        ChainModel::Ising => HamiltonianSpec::Ising { coupling: args.coupling, field: args.field },
        ChainModel::Heisenberg => HamiltonianSpec::Heisenberg { coupling: args.coupling },
    };
    let terms = spec.terms(args.n)?;
    let bare = evolved_pauli(args.n, &terms, 0.0, args.site, args.pauli)?;
    let bare_var = variance(&to_fourier(&bare));
    for &t in &args.times {
        let a = evolved_pauli(args.n, &terms, t, args.site, args.pauli)?;
        let f = to_fourier(&a);
        let prof = profile(&f);
        let var = variance(&f);
        let bounds = (0..args.n).map(|j| commutator_influence_bound(&a, j, tol.inequality)).collect::<qbool_core::Result<Vec<_>>>()?;
        let preserved = (var - bare_var).abs() <= 1e-10;
        failures += bounds.iter().filter(|b| !b.holds).count() + usize::from(!preserved);
        let rows = bounds.iter().map(|b| Row::new(format!("commutator_bound_q{}", b.qubit), args.n, seed, b.lhs, b.rhs)).collect();
        let step = EvolutionStep {
            kind: "evolution",
            n: args.n,
            t,
            variance: var,
            inf1: prof.inf1,
            inf2: prof.inf2,
            commutator_bounds: bounds,
            variance_preserved: preserved,
        };
        records.push(Box::new(Tabled { value: step, rows }));
    }
    Ok(Outcome { records, failures })
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_forms() {
        let d = parse_omega("0.7").unwrap();
        assert_eq!(d[(0, 0)], Complex64::new(0.7, 0.0));
        assert!((d[(1, 1)] - Complex64::new(0.3, 0.0)).norm() < 1e-15);
        let m = parse_omega("[[0.6, [0.1, 0.2]], [[0.1, -0.2], 0.4]]").unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.1, 0.2));
        assert!(parse_omega("1.5").is_err());
        assert!(parse_omega("[[1]]").is_err());
    }
}
