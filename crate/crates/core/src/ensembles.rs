// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Generators of test operators: classical embeddings, Haar-random quantum
//! Boolean functions and projectors, random low-degree operators, and
//! observables evolved under small spin-chain Hamiltonians.
//!
//! Classical truth tables are indexed by the computational basis index `x`;
//! the variable `x_j` is `+1` when qubit `j` is `|0⟩` and `-1` when it is `|1⟩`,
//! so the dictator `x_j` embeds as `σ_3` at qubit `j`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::influence::d_j_dense;
use crate::linalg::{self, CMatrix};
use crate::pauli::{pauli_matrix, to_dense, to_fourier, DenseOperator, FourierOperator, PauliString};

/// Deterministic generator for element `stream` of the ensemble seeded by `seed`.
///
/// Each element owns its own ChaCha stream, so elements can be produced in any
/// order or in parallel and still come out bit-identical.
pub fn instance_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    // Column-major fill keeps the draw order independent of nalgebra internals.
    let mut m = CMatrix::zeros(rows, cols);
    for c in 0..cols {
        for r in 0..rows {
            m[(r, c)] = complex_normal(rng);
        }
    }
    m
}

fn walsh_embed(n: usize, table: &[f64]) -> Result<FourierOperator> {
    let d = 1usize << n;
    if table.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: table.len() });
    }
    let mut w = table.to_vec();
    let mut h = 1;
    while h < d {
        for block in (0..d).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (w[i], w[i + h]);
                w[i] = a + b;
                w[i + h] = a - b;
            }
        }
        h *= 2;
    }
    let mut f = FourierOperator::zeros(n);
    for (mask, v) in w.into_iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let letters: Vec<u8> = (0..n).map(|j| if mask & (1 << (n - 1 - j)) != 0 { 3 } else { 0 }).collect();
        f.set(PauliString::new(&letters)?, Complex64::new(v / d as f64, 0.0));
    }
    Ok(f)
}

/// Diagonal operator with entries `f(x)`; its coefficients live on `{0,3}^n`
/// strings and equal the Fourier-Walsh coefficients of `f`.
pub fn classical_embed(n: usize, table: &[f64]) -> Result<FourierOperator> {
    if let Some(bad) = table.iter().find(|v| **v != 1.0 && **v != -1.0) {
        return Err(Error::InvalidParameter(format!("truth table value {bad} is not ±1")));
    }
    walsh_embed(n, table)
}

/// Value of `x_j` at basis index `x`.
fn spin(n: usize, x: usize, j: usize) -> f64 {
    if x & (1 << (n - 1 - j)) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn truth_table(n: usize, f: impl Fn(usize) -> f64) -> Vec<f64> {
    (0..1usize << n).map(f).collect()
}

pub fn dictator(n: usize, j: usize) -> Result<FourierOperator> {
    if j >= n {
        return Err(Error::QubitOutOfRange { index: j, n });
    }
    classical_embed(n, &truth_table(n, |x| spin(n, x, j)))
}

pub fn parity(n: usize) -> Result<FourierOperator> {
    classical_embed(n, &truth_table(n, |x| (0..n).map(|j| spin(n, x, j)).product()))
}

/// Majority vote; `n` must be odd.
pub fn majority(n: usize) -> Result<FourierOperator> {
    if n % 2 == 0 {
        return Err(Error::InvalidParameter(format!("majority needs an odd number of bits, got {n}")));
    }
    classical_embed(
        n,
        &truth_table(n, |x| {
            let s: f64 = (0..n).map(|j| spin(n, x, j)).sum();
            s.signum()
        }),
    )
}

/// Tribes: `-1` (true) when some consecutive block of `width` bits is all `-1`.
pub fn tribes(n: usize, width: usize) -> Result<FourierOperator> {
    if width == 0 || n % width != 0 {
        return Err(Error::InvalidParameter(format!("tribes width {width} must divide n = {n}")));
    }
    classical_embed(
        n,
        &truth_table(n, |x| {
            let any = (0..n / width).any(|b| (0..width).all(|k| spin(n, x, b * width + k) < 0.0));
            if any {
                -1.0
            } else {
                1.0
            }
        }),
    )
}

/// Haar-random rank-`rank` orthogonal projector.
pub fn random_projector<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Result<DenseOperator> {
    let d = 1usize << n;
    if rank > d {
        return Err(Error::InvalidParameter(format!("rank {rank} exceeds dimension {d}")));
    }
    if rank == 0 {
        return Ok(DenseOperator::zeros(n));
    }
    let g = gaussian_matrix(d, rank, rng);
    let q = g.qr().q();
    let p = &q * q.adjoint();
    let p = linalg::hermitian_part(&p);
    DenseOperator::new(n, p)
}

/// `2P - 1` for a Haar-random rank-`rank` projector `P`; balanced when `rank = 2^{n-1}`.
pub fn random_qbf<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Result<DenseOperator> {
    let p = random_projector(n, rank, rng)?;
    let d = p.dim();
    Ok(DenseOperator::from_parts(n, p.matrix() * Complex64::new(2.0, 0.0) - CMatrix::identity(d, d)))
}

/// GUE-like Hermitian matrix `(G + G*)/(2√d)`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    let d = 1usize << n;
    let g = gaussian_matrix(d, d, rng);
    let h = (&g + g.adjoint()) * Complex64::new(0.5 / (d as f64).sqrt(), 0.0);
    DenseOperator::from_parts(n, h)
}

/// Complex Gaussian matrix with entries of variance `1/d`.
pub fn random_operator<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    let d = 1usize << n;
    let g = gaussian_matrix(d, d, rng) * Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    DenseOperator::from_parts(n, g)
}

/// Places a `k`-qubit operator on the listed qubits of an `n`-qubit register.
pub fn embed_fourier(n: usize, qubits: &[usize], local: &FourierOperator) -> Result<FourierOperator> {
    if qubits.len() != local.n() {
        return Err(Error::DimensionMismatch { expected: local.n(), got: qubits.len() });
    }
    for (i, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::InvalidParameter(format!("qubit {q} listed twice")));
        }
    }
    let terms = local.terms().into_iter().map(|(s, c)| {
        let mut big = PauliString::identity(n);
        for (i, &q) in qubits.iter().enumerate() {
            big = big.with_letter(q, s.letter(i));
        }
        (big, c)
    });
    FourierOperator::from_terms(n, terms)
}

/// Random quantum Boolean junta: a Haar-random `2P - 1` on `qubits`, identity elsewhere.
pub fn random_junta<R: Rng + ?Sized>(n: usize, qubits: &[usize], rank: usize, rng: &mut R) -> Result<FourierOperator> {
    let local = random_qbf(qubits.len(), rank, rng)?;
    embed_fourier(n, qubits, &to_fourier(&local))
}

/// Random operator of degree at most `degree`, rescaled to operator norm 1.
///
/// Every string of weight at most `degree` (restricted to `{0,3}` letters when
/// `diagonal`) receives an independent standard normal coefficient.
pub fn random_low_degree<R: Rng + ?Sized>(n: usize, degree: usize, diagonal: bool, rng: &mut R) -> Result<FourierOperator> {
    let letters: &[u8] = if diagonal { &[3] } else { &[1, 2, 3] };
    let mut f = FourierOperator::zeros(n);
    for s in strings_up_to_weight(n, degree, letters) {
        let v: f64 = rng.sample(StandardNormal);
        f.set(s, Complex64::new(v, 0.0));
    }
    let norm = linalg::operator_norm(to_dense(&f).matrix());
    if norm == 0.0 {
        return Ok(f);
    }
    Ok(f.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// All strings of weight at most `max_weight` using the given non-identity letters.
pub fn strings_up_to_weight(n: usize, max_weight: usize, letters: &[u8]) -> Vec<PauliString> {
    let mut out = Vec::new();
    let mut word = vec![0u8; n];
    fn rec(pos: usize, left: usize, word: &mut Vec<u8>, letters: &[u8], out: &mut Vec<PauliString>) {
        if pos == word.len() {
            out.push(PauliString::new(word).expect("letters are valid"));
            return;
        }
        word[pos] = 0;
        rec(pos + 1, left, word, letters, out);
        if left > 0 {
            for &l in letters {
                word[pos] = l;
                rec(pos + 1, left - 1, word, letters, out);
            }
            word[pos] = 0;
        }
    }
    rec(0, max_weight, &mut word, letters, &mut out);
    out
}

/// `U σ_3^{(0)} U*` with `U = exp(i·strength·H)` for a random Hermitian `H`:
/// a quantum Boolean function dominated by qubit 0 when `strength` is small.
pub fn perturbed_dictator<R: Rng + ?Sized>(n: usize, strength: f64, rng: &mut R) -> Result<DenseOperator> {
    let h = random_hermitian(n, rng);
    let u = evolution_unitary(h.matrix(), -strength);
    let z = pauli_matrix(PauliString::single(n, 0, 3)?);
    Ok(DenseOperator::from_parts(n, linalg::hermitian_part(&(&u * z.matrix() * u.adjoint()))))
}

/// A Hermitian term acting on a few qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTerm {
    /// Target qubits; the first listed is the leftmost local factor.
    pub sites: Vec<usize>,
    pub matrix: DMatrix<Complex64>,
}

impl LocalTerm {
    /// `coefficient · σ_s` restricted to the support of `s`.
    pub fn pauli(coefficient: f64, s: PauliString) -> Self {
        let sites = s.support();
        let letters: Vec<u8> = sites.iter().map(|&j| s.letter(j)).collect();
        let local = PauliString::new(&letters).expect("letters come from a valid string");
        let matrix = pauli_matrix(local).into_matrix() * Complex64::new(coefficient, 0.0);
        Self { sites, matrix }
    }
}

/// Serializable description of a spin-chain Hamiltonian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HamiltonianSpec {
    /// `Σ J σ_3σ_3 + h Σ σ_1` on an open chain.
    Ising { coupling: f64, field: f64 },
    /// `Σ J (σ_1σ_1 + σ_2σ_2 + σ_3σ_3)` on an open chain.
    Heisenberg { coupling: f64 },
    /// Explicit Pauli terms `Σ c_k σ_{s_k}`.
    Terms { terms: Vec<PauliTermSpec> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTermSpec {
    pub pauli: String,
    pub coefficient: f64,
}

impl HamiltonianSpec {
    pub fn terms(&self, n: usize) -> Result<Vec<LocalTerm>> {
        let pair = |a: usize, l: u8| -> Result<PauliString> {
            Ok(PauliString::single(n, a, l)?.with_letter(a + 1, l))
        };
        let mut out = Vec::new();
        match self {
            Self::Ising { coupling, field } => {
                for a in 0..n.saturating_sub(1) {
                    out.push(LocalTerm::pauli(*coupling, pair(a, 3)?));
                }
                for a in 0..n {
                    out.push(LocalTerm::pauli(*field, PauliString::single(n, a, 1)?));
                }
            }
            Self::Heisenberg { coupling } => {
                for a in 0..n.saturating_sub(1) {
                    for l in 1..=3 {
                        out.push(LocalTerm::pauli(*coupling, pair(a, l)?));
                    }
                }
            }
            Self::Terms { terms } => {
                for t in terms {
                    let s: PauliString = t.pauli.parse()?;
                    if s.n() != n {
                        return Err(Error::DimensionMismatch { expected: n, got: s.n() });
                    }
                    out.push(LocalTerm::pauli(t.coefficient, s));
                }
            }
        }
        Ok(out)
    }
}

fn embed_local(n: usize, term: &LocalTerm) -> Result<CMatrix> {
    let k = term.sites.len();
    let dk = 1usize << k;
    if term.matrix.nrows() != dk || term.matrix.ncols() != dk {
        return Err(Error::DimensionMismatch { expected: dk, got: term.matrix.nrows() });
    }
    let herm = linalg::hermitian_residual(&term.matrix);
    if herm > 1e-12 * linalg::max_abs_entry(&term.matrix).max(1.0) {
        return Err(Error::NotHermitian(herm));
    }
    let mut bits = Vec::with_capacity(k);
    for &q in &term.sites {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
        bits.push(1usize << (n - 1 - q));
    }
    let mask: usize = bits.iter().sum();
    let scatter = |local: usize| -> usize {
        (0..k).filter(|i| local & (1 << (k - 1 - i)) != 0).map(|i| bits[i]).sum()
    };
    let gather = |global: usize| -> usize {
        (0..k).filter(|&i| global & bits[i] != 0).map(|i| 1 << (k - 1 - i)).sum()
    };
    let d = 1usize << n;
    let mut m = CMatrix::zeros(d, d);
    for c in 0..d {
        let lc = gather(c);
        let base = c & !mask;
        for lr in 0..dk {
            let v = term.matrix[(lr, lc)];
            if v != Complex64::new(0.0, 0.0) {
                m[(base | scatter(lr), c)] += v;
            }
        }
    }
    Ok(m)
}

/// Dense Hamiltonian `Σ_k term_k` on `n` qubits.
pub fn hamiltonian_matrix(n: usize, terms: &[LocalTerm]) -> Result<DenseOperator> {
    let d = 1usize << n;
    let mut h = CMatrix::zeros(d, d);
    for t in terms {
        h += embed_local(n, t)?;
    }
    Ok(DenseOperator::from_parts(n, h))
}

/// `e^{-itH}` through the eigendecomposition of `H`.
fn evolution_unitary(h: &CMatrix, t: f64) -> CMatrix {
    let (vals, vecs) = linalg::hermitian_eigen(h);
    let mut scaled = vecs.clone();
    for c in 0..vals.len() {
        let phase = Complex64::from_polar(1.0, -t * vals[c]);
        for r in 0..vals.len() {
            scaled[(r, c)] *= phase;
        }
    }
    scaled * vecs.adjoint()
}

/// `e^{itH} σ_letter^{(site)} e^{-itH}`.
pub fn evolved_pauli(n: usize, hamiltonian: &[LocalTerm], t: f64, site: usize, letter: u8) -> Result<DenseOperator> {
    if n > 10 {
        return Err(Error::InvalidParameter(format!("evolution limited to n <= 10, got {n}")));
    }
    let s = PauliString::single(n, site, letter)?;
    let h = hamiltonian_matrix(n, hamiltonian)?;
    let u = evolution_unitary(h.matrix(), t);
    let sigma = pauli_matrix(s);
    let evolved = u.adjoint() * sigma.matrix() * &u;
    Ok(DenseOperator::from_parts(n, linalg::hermitian_part(&evolved)))
}

/// Both sides of `‖d_j A‖_∞ ≤ (1/4) Σ_{k=1}^{3} ‖[A, σ_k^{(j)}]‖_∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorBound {
    pub qubit: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn commutator_influence_bound(a: &DenseOperator, j: usize, tol: f64) -> Result<CommutatorBound> {
    let dj = d_j_dense(a, j)?;
    let lhs = linalg::operator_norm(dj.matrix());
    let mut rhs = 0.0;
    for letter in 1..=3 {
        let s = pauli_matrix(PauliString::single(a.n(), j, letter)?);
        let comm = a.matrix() * s.matrix() - s.matrix() * a.matrix();
        rhs += linalg::operator_norm(&comm);
    }
    rhs *= 0.25;
    Ok(CommutatorBound { qubit: j, lhs, rhs, holds: lhs <= rhs + tol })
}

/// Operator families that [`EnsembleSpec`] can materialize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Dictator,
    Parity,
    Majority,
    Tribes,
    ClassicalCustom,
    RandomQbf,
    RandomHermitian,
    RandomProjector,
    EvolvedPauli,
    RandomJunta,
    PerturbedDictator,
    RandomLowDegree,
    RandomOperator,
}

impl Family {
    /// Whether every element is a quantum Boolean function.
    pub fn is_boolean(self) -> bool {
        matches!(
            self,
            Self::Dictator
                | Self::Parity
                | Self::Majority
                | Self::Tribes
                | Self::ClassicalCustom
                | Self::RandomQbf
                | Self::EvolvedPauli
                | Self::RandomJunta
                | Self::PerturbedDictator
        )
    }
}

/// Family-specific knobs; unset fields take the documented defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EnsembleParams {
    /// Projector rank; defaults to `2^{n-1}` (balanced).
    pub rank: Option<usize>,
    /// Tribe width; defaults to 2.
    pub width: Option<usize>,
    /// Evolution time; defaults to 1.
    pub time: Option<f64>,
    /// Site of the evolved Pauli (default 0) or dictator variable.
    pub site: Option<usize>,
    /// Letter of the evolved Pauli; defaults to 3.
    pub pauli: Option<u8>,
    /// Defaults to an Ising chain with unit coupling and field.
    pub hamiltonian: Option<HamiltonianSpec>,
    pub truth_table: Option<Vec<f64>>,
    /// Junta qubits; defaults to two distinct random qubits per element.
    pub qubits: Option<Vec<usize>>,
    /// Perturbation strength; defaults to 0.1.
    pub strength: Option<f64>,
    /// Degree bound for low-degree operators; defaults to 2.
    pub degree: Option<usize>,
    /// Restrict low-degree operators to diagonal strings.
    pub diagonal: Option<bool>,
}

/// A reproducible ensemble: element `i` depends only on `(family, n, seed, params, i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub params: EnsembleParams,
}

impl EnsembleSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self { family, n, seed, params: EnsembleParams::default() }
    }

    pub fn with_params(mut self, params: EnsembleParams) -> Self {
        self.params = params;
        self
    }

    /// Element `index` in Fourier form.
    pub fn fourier(&self, index: u64) -> Result<FourierOperator> {
        let n = self.n;
        let p = &self.params;
        let mut rng = instance_rng(self.seed, index);
        match self.family {
            Family::Dictator => dictator(n, p.site.unwrap_or(0)),
            Family::Parity => parity(n),
            Family::Majority => majority(n),
            Family::Tribes => tribes(n, p.width.unwrap_or(2)),
            Family::ClassicalCustom => {
                let table = p
                    .truth_table
                    .as_ref()
                    .ok_or_else(|| Error::InvalidParameter("classical_custom needs a truth_table".into()))?;
                classical_embed(n, table)
            }
            Family::RandomJunta => {
                let qubits = match &p.qubits {
                    Some(q) => q.clone(),
                    None => random_pair(n, &mut rng)?,
                };
                let rank = p.rank.unwrap_or(1usize << qubits.len().saturating_sub(1));
                random_junta(n, &qubits, rank, &mut rng)
            }
            Family::RandomLowDegree => {
                random_low_degree(n, p.degree.unwrap_or(2), p.diagonal.unwrap_or(false), &mut rng)
            }
            _ => Ok(to_fourier(&self.dense(index)?)),
        }
    }

    /// Element `index` as a dense matrix.
    pub fn dense(&self, index: u64) -> Result<DenseOperator> {
        let n = self.n;
        let p = &self.params;
        let mut rng = instance_rng(self.seed, index);
        let balanced = if n == 0 { 0 } else { 1usize << (n - 1) };
        match self.family {
            Family::RandomQbf => random_qbf(n, p.rank.unwrap_or(balanced), &mut rng),
            Family::RandomHermitian => Ok(random_hermitian(n, &mut rng)),
            Family::RandomOperator => Ok(random_operator(n, &mut rng)),
            Family::RandomProjector => random_projector(n, p.rank.unwrap_or(balanced), &mut rng),
            Family::PerturbedDictator => perturbed_dictator(n, p.strength.unwrap_or(0.1), &mut rng),
            Family::EvolvedPauli => {
                let spec = p.hamiltonian.clone().unwrap_or(HamiltonianSpec::Ising { coupling: 1.0, field: 1.0 });
                evolved_pauli(n, &spec.terms(n)?, p.time.unwrap_or(1.0), p.site.unwrap_or(0), p.pauli.unwrap_or(3))
            }
            _ => Ok(to_dense(&self.fourier(index)?)),
        }
    }
}

fn random_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::InvalidParameter("a random pair needs at least 2 qubits".into()));
    }
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    let mut v = vec![a, b];
    v.sort_unstable();
    Ok(v)
}
