// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Pauli strings, the Pauli-Fourier and dense operator representations, and
//! normalized norms.
//!
//! Conventions: qubit `j` is the `j`-th tensor factor counted from the left
//! (0-based). In a basis index it occupies bit `n - 1 - j`; in a Pauli string
//! code it occupies base-4 digit `n - 1 - j`. Hence the lexicographic order of
//! strings such as `"0312"` coincides with the numeric order of their codes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::sites;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest register for which coefficients are kept in a dense `4^n` array.
pub const DENSE_STORAGE_MAX_QUBITS: usize = 7;

/// A word `s ∈ {0,1,2,3}^n` naming the tensor product `σ_{s_0} ⊗ … ⊗ σ_{s_{n-1}}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    code: u64,
}

impl PauliString {
    /// Longest word representable.
    pub const MAX_QUBITS: usize = 32;

    /// Builds a string from its letters, one per qubit in tensor order.
    pub fn new(letters: &[u8]) -> Result<Self> {
        let n = letters.len();
        if n > Self::MAX_QUBITS {
            return Err(Error::InvalidParameter(format!(
                "{n} qubits exceeds the supported maximum of {}",
                Self::MAX_QUBITS
            )));
        }
        let mut code = 0u64;
        for &l in letters {
            if l > 3 {
                return Err(Error::InvalidPauliString(format!("{letters:?}")));
            }
            code = (code << 2) | u64::from(l);
        }
        Ok(Self { n, code })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, code: 0 }
    }

    /// `σ_letter` at `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: u8) -> Result<Self> {
        if qubit >= n {
            return Err(Error::QubitOutOfRange { index: qubit, n });
        }
        if letter > 3 {
            return Err(Error::InvalidPauliString(format!("letter {letter}")));
        }
        Ok(Self::identity(n).with_letter(qubit, letter))
    }

    /// Inverse of [`PauliString::index`].
    pub fn from_index(n: usize, index: usize) -> Self {
        debug_assert!(n <= Self::MAX_QUBITS);
        debug_assert!(n == Self::MAX_QUBITS || (index as u64) < (1u64 << (2 * n)));
        Self { n, code: index as u64 }
    }

    /// Position of this string in the base-4 enumeration of all `4^n` strings.
    pub fn index(&self) -> usize {
        self.code as usize
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn shift(&self, qubit: usize) -> usize {
        2 * (self.n - 1 - qubit)
    }

    /// Letter at `qubit`. Panics when `qubit >= n`.
    #[inline]
    pub fn letter(&self, qubit: usize) -> u8 {
        assert!(qubit < self.n, "qubit {qubit} out of range for {} qubits", self.n);
        ((self.code >> self.shift(qubit)) & 3) as u8
    }

    pub fn letters(&self) -> Vec<u8> {
        (0..self.n).map(|j| self.letter(j)).collect()
    }

    /// Copy with the letter at `qubit` replaced.
    pub fn with_letter(&self, qubit: usize, letter: u8) -> Self {
        let sh = self.shift(qubit);
        let code = (self.code & !(3u64 << sh)) | (u64::from(letter & 3) << sh);
        Self { n: self.n, code }
    }

    #[inline]
    fn low_bits(&self) -> u64 {
        self.code & 0x5555_5555_5555_5555
    }

    #[inline]
    fn high_bits(&self) -> u64 {
        (self.code >> 1) & 0x5555_5555_5555_5555
    }

    /// Number of non-identity letters, `|supp(s)|`.
    #[inline]
    pub fn weight(&self) -> usize {
        (self.low_bits() | self.high_bits()).count_ones() as usize
    }

    #[inline]
    pub fn acts_on(&self, qubit: usize) -> bool {
        self.letter(qubit) != 0
    }

    pub fn is_identity(&self) -> bool {
        self.code == 0
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.acts_on(j)).collect()
    }

    /// Bit mask over basis bits: bit `n-1-j` set when `s_j ≠ 0`.
    pub fn support_mask(&self) -> u64 {
        compress_pairs(self.low_bits() | self.high_bits())
    }

    /// Basis-bit masks `(x, z)` and the number of `σ_2` factors, such that
    /// `σ_s |c⟩ = i^{ny} (-1)^{|c ∧ z|} |c ⊕ x⟩`.
    #[inline]
    pub(crate) fn xz(&self) -> (usize, usize, u32) {
        let lo = self.low_bits();
        let hi = self.high_bits();
        let x = compress_pairs(lo ^ hi) as usize;
        let z = compress_pairs(hi) as usize;
        let ny = (hi & !lo).count_ones();
        (x, z, ny)
    }
}

/// Gathers bits 0, 2, 4, … of `v` into bits 0, 1, 2, ….
#[inline]
fn compress_pairs(v: u64) -> u64 {
    let mut x = v & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    x = (x | (x >> 16)) & 0x0000_0000_ffff_ffff;
    x
}

#[inline]
fn i_power(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[inline]
fn sign_of(c: usize, z: usize) -> f64 {
    if (c & z).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n {
            write!(f, "{}", self.letter(j))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts base-4 digits (`"0312"`) or Pauli letters (`"IZXY"`).
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|ch| match ch {
                '0' | 'I' | 'i' => Ok(0),
                '1' | 'X' | 'x' => Ok(1),
                '2' | 'Y' | 'y' => Ok(2),
                '3' | 'Z' | 'z' => Ok(3),
                _ => Err(Error::InvalidPauliString(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(&letters)
    }
}

/// A `2^n x 2^n` complex matrix acting on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(n: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << n;
        if matrix.nrows() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: matrix.nrows() });
        }
        if matrix.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: matrix.ncols() });
        }
        Ok(Self { n, matrix })
    }

    /// Infers `n` from a square power-of-two matrix.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        if !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("dimension {dim} is not a power of two")));
        }
        Self::new(dim.trailing_zeros() as usize, matrix)
    }

    pub(crate) fn from_parts(n: usize, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), 1 << n);
        Self { n, matrix }
    }

    pub fn identity(n: usize) -> Self {
        let d = 1usize << n;
        Self { n, matrix: CMatrix::identity(d, d) }
    }

    pub fn zeros(n: usize) -> Self {
        let d = 1usize << n;
        Self { n, matrix: CMatrix::zeros(d, d) }
    }

    /// Diagonal operator with the given real entries.
    pub fn from_diagonal(n: usize, diagonal: &[f64]) -> Result<Self> {
        let d = 1usize << n;
        if diagonal.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: diagonal.len() });
        }
        let mut m = CMatrix::zeros(d, d);
        for (i, &v) in diagonal.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Ok(Self { n, matrix: m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self { n: self.n, matrix: self.matrix.adjoint() }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { n: self.n, matrix: &self.matrix * c }
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self { n: self.n, matrix: &self.matrix * &other.matrix })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self { n: self.n, matrix: &self.matrix + &other.matrix })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self { n: self.n, matrix: &self.matrix - &other.matrix })
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `2^{-n} tr(A)`.
    pub fn normalized_trace(&self) -> Complex64 {
        self.trace() / self.dim() as f64
    }

    /// Largest entrywise modulus of `A - A*`.
    pub fn hermitian_residual(&self) -> f64 {
        linalg::hermitian_residual(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = linalg::hermitian_eigenvalues(&self.matrix).iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.matrix)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        linalg::max_eigenvalue(&self.matrix)
    }

    /// Largest entrywise modulus of `A - B`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "qubit counts differ");
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// `x - 2^{-n} tr(x) 1`.
    pub fn centered(&self) -> Self {
        let mean = self.normalized_trace();
        let mut m = self.matrix.clone();
        for i in 0..self.dim() {
            m[(i, i)] -= mean;
        }
        Self { n: self.n, matrix: m }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Coeffs {
    Dense(Vec<Complex64>),
    Sparse(BTreeMap<u64, Complex64>),
}

/// An operator stored through its Pauli-Fourier coefficients `Â_s`.
///
/// Registers of up to [`DENSE_STORAGE_MAX_QUBITS`] qubits use a dense array
/// indexed by [`PauliString::index`]; larger ones store only the nonzero terms.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierOperator {
    n: usize,
    coeffs: Coeffs,
}

impl FourierOperator {
    pub fn zeros(n: usize) -> Self {
        let coeffs = if n <= DENSE_STORAGE_MAX_QUBITS {
            Coeffs::Dense(vec![ZERO; 1 << (2 * n)])
        } else {
            Coeffs::Sparse(BTreeMap::new())
        };
        Self { n, coeffs }
    }

    pub fn identity(n: usize) -> Self {
        let mut f = Self::zeros(n);
        f.set(PauliString::identity(n), ONE);
        f
    }

    /// The operator `σ_s`.
    pub fn pauli(s: PauliString) -> Self {
        let mut f = Self::zeros(s.n());
        f.set(s, ONE);
        f
    }

    /// Sum of `(string, coefficient)` terms; repeated strings accumulate.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (PauliString, Complex64)>) -> Result<Self> {
        let mut f = Self::zeros(n);
        for (s, c) in terms {
            if s.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: s.n() });
            }
            let prev = f.coeff(s);
            f.set(s, prev + c);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_dense_storage(&self) -> bool {
        matches!(self.coeffs, Coeffs::Dense(_))
    }

    pub fn coeff(&self, s: PauliString) -> Complex64 {
        debug_assert_eq!(s.n(), self.n);
        match &self.coeffs {
            Coeffs::Dense(v) => v[s.index()],
            Coeffs::Sparse(m) => m.get(&s.code()).copied().unwrap_or(ZERO),
        }
    }

    pub fn set(&mut self, s: PauliString, c: Complex64) {
        debug_assert_eq!(s.n(), self.n);
        match &mut self.coeffs {
            Coeffs::Dense(v) => v[s.index()] = c,
            Coeffs::Sparse(m) => {
                if c == ZERO {
                    m.remove(&s.code());
                } else {
                    m.insert(s.code(), c);
                }
            }
        }
    }

    /// Coefficient of the identity string, `2^{-n} tr(A)`.
    pub fn mean(&self) -> Complex64 {
        self.coeff(PauliString::identity(self.n))
    }

    /// Stored terms with a nonzero coefficient, in string order.
    pub fn terms(&self) -> Vec<(PauliString, Complex64)> {
        let n = self.n;
        match &self.coeffs {
            Coeffs::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != ZERO)
                .map(|(i, c)| (PauliString::from_index(n, i), *c))
                .collect(),
            Coeffs::Sparse(m) => m
                .iter()
                .map(|(&code, c)| (PauliString { n, code }, *c))
                .collect(),
        }
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        match &self.coeffs {
            Coeffs::Dense(v) => v.iter().filter(|c| **c != ZERO).count(),
            Coeffs::Sparse(m) => m.len(),
        }
    }

    /// Multiplies each coefficient `Â_s` by `factor(s)`.
    pub fn multiplied(&self, factor: impl Fn(PauliString) -> f64) -> Self {
        let n = self.n;
        let coeffs = match &self.coeffs {
            Coeffs::Dense(v) => Coeffs::Dense(
                v.iter()
                    .enumerate()
                    .map(|(i, c)| if *c == ZERO { ZERO } else { c * factor(PauliString::from_index(n, i)) })
                    .collect(),
            ),
            Coeffs::Sparse(m) => Coeffs::Sparse(
                m.iter()
                    .map(|(&code, c)| (code, c * factor(PauliString { n, code })))
                    .filter(|(_, c)| *c != ZERO)
                    .collect(),
            ),
        };
        Self { n, coeffs }
    }

    /// Keeps the coefficients whose string satisfies `keep`, zeroing the rest.
    pub fn filtered(&self, keep: impl Fn(PauliString) -> bool) -> Self {
        self.multiplied(|s| if keep(s) { 1.0 } else { 0.0 })
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Dense(v) => Coeffs::Dense(v.iter().map(|x| x * c).collect()),
            Coeffs::Sparse(m) => Coeffs::Sparse(
                m.iter().map(|(&k, x)| (k, x * c)).filter(|(_, x)| *x != ZERO).collect(),
            ),
        };
        Self { n: self.n, coeffs }
    }

    fn combine(&self, other: &Self, sign: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.set(s, out.coeff(s) + c * sign);
        }
        Ok(out)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }

    /// `A*`, whose coefficients are the conjugates of those of `A`.
    pub fn adjoint(&self) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Dense(v) => Coeffs::Dense(v.iter().map(|c| c.conj()).collect()),
            Coeffs::Sparse(m) => Coeffs::Sparse(m.iter().map(|(&k, c)| (k, c.conj())).collect()),
        };
        Self { n: self.n, coeffs }
    }

    /// `‖A‖₂² = Σ_s |Â_s|²` (Parseval).
    pub fn norm2_squared(&self) -> f64 {
        self.terms().iter().fold(0.0, |acc, (_, c)| acc + c.norm_sqr())
    }

    /// Largest coefficient deviation `max_s |Â_s - B̂_s|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "qubit counts differ");
        let mut worst = 0.0f64;
        for (s, c) in self.terms() {
            worst = worst.max((c - other.coeff(s)).norm());
        }
        for (s, c) in other.terms() {
            worst = worst.max((c - self.coeff(s)).norm());
        }
        worst
    }

    /// Largest imaginary part among the coefficients.
    pub fn hermitian_residual(&self) -> f64 {
        self.terms().iter().fold(0.0, |m, (_, c)| m.max(c.im.abs()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol
    }

    /// Largest weight among coefficients with magnitude above `tol`.
    pub fn degree(&self, tol: f64) -> usize {
        self.terms()
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(s, _)| s.weight())
            .max()
            .unwrap_or(0)
    }
}

/// A normalized Schatten norm together with its exponent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    /// Exponent; `f64::INFINITY` denotes the operator norm.
    pub p: f64,
    pub value: f64,
}

/// `σ_s` as a dense matrix.
pub fn pauli_matrix(s: PauliString) -> DenseOperator {
    let n = s.n();
    let d = 1usize << n;
    let (x, z, ny) = s.xz();
    let phase = i_power(ny);
    let mut m = CMatrix::zeros(d, d);
    for c in 0..d {
        m[(c ^ x, c)] = phase * sign_of(c, z);
    }
    DenseOperator { n, matrix: m }
}

/// Coefficients `Â_s = 2^{-n} tr(σ_s A)` for every string.
pub fn to_fourier(a: &DenseOperator) -> FourierOperator {
    let n = a.n;
    let d = a.dim();
    let inv = 1.0 / d as f64;
    let mut f = FourierOperator::zeros(n);
    let total: u64 = 1u64 << (2 * n);
    for idx in 0..total {
        let s = PauliString { n, code: idx };
        let (x, z, ny) = s.xz();
        let mut acc = ZERO;
        for c in 0..d {
            acc += a.matrix[(c, c ^ x)] * sign_of(c, z);
        }
        let coeff = acc * i_power(ny) * inv;
        if coeff != ZERO {
            f.set(s, coeff);
        }
    }
    f
}

/// `Σ_s Â_s σ_s` as a dense matrix.
pub fn to_dense(f: &FourierOperator) -> DenseOperator {
    let n = f.n;
    let d = 1usize << n;
    let mut m = CMatrix::zeros(d, d);
    for (s, coeff) in f.terms() {
        let (x, z, ny) = s.xz();
        let w = coeff * i_power(ny);
        for c in 0..d {
            m[(c ^ x, c)] += w * sign_of(c, z);
        }
    }
    DenseOperator { n, matrix: m }
}

/// Normalized Schatten norm `(2^{-n} tr|A|^p)^{1/p}`; `p = ∞` gives the
/// largest singular value.
pub fn schatten_norm(a: &DenseOperator, p: f64) -> Result<NormValue> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let sv = linalg::singular_values(&a.matrix);
    Ok(NormValue { p, value: schatten_from_singular_values(&sv, p) })
}

pub(crate) fn schatten_from_singular_values(sv: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return sv.iter().copied().fold(0.0, f64::max);
    }
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    // Factor out the largest value to keep large p from overflowing.
    let mean: f64 = sv.iter().map(|s| (s / top).powf(p)).sum::<f64>() / sv.len() as f64;
    top * mean.powf(1.0 / p)
}

/// Normalized Hilbert-Schmidt inner product `2^{-n} tr(A* B)`.
pub fn inner(a: &DenseOperator, b: &DenseOperator) -> Result<Complex64> {
    a.same_n(b)?;
    Ok(linalg::trace_inner(&a.matrix, &b.matrix) / a.dim() as f64)
}

/// `Σ_s conj(Â_s) B̂_s`, equal to [`inner`] of the dense forms.
pub fn inner_fourier(a: &FourierOperator, b: &FourierOperator) -> Result<Complex64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { expected: a.n, got: b.n });
    }
    Ok(a.terms().iter().map(|(s, c)| c.conj() * b.coeff(*s)).sum())
}

/// `Var(A) = ‖A - 2^{-n}tr(A)‖₂² = Σ_{s≠0} |Â_s|²`.
pub fn variance(f: &FourierOperator) -> f64 {
    f.terms()
        .iter()
        .filter(|(s, _)| !s.is_identity())
        .map(|(_, c)| c.norm_sqr())
        .sum()
}

/// Outcome of [`is_quantum_boolean`], with operator-norm residuals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BooleanCheck {
    pub is_boolean: bool,
    /// `‖A - A*‖_∞`.
    pub hermitian_residual: f64,
    /// `‖A² - 1‖_∞`.
    pub square_residual: f64,
}

/// Tests `A = A*` and `A² = 1` in operator norm.
pub fn is_quantum_boolean(a: &DenseOperator, tol: f64) -> BooleanCheck {
    let herm = linalg::operator_norm(&(&a.matrix - a.matrix.adjoint()));
    let d = a.dim();
    let sq = &a.matrix * &a.matrix - CMatrix::identity(d, d);
    let square = linalg::operator_norm(&sq);
    BooleanCheck { is_boolean: herm <= tol && square <= tol, hermitian_residual: herm, square_residual: square }
}

/// Qubits touched by some coefficient of magnitude above `tol`.
pub fn support_of(f: &FourierOperator, tol: f64) -> BTreeSet<usize> {
    let mut mask = 0u64;
    for (s, c) in f.terms() {
        if c.norm() > tol {
            mask |= s.support_mask();
        }
    }
    (0..f.n).filter(|&j| mask & (1u64 << (f.n - 1 - j)) != 0).collect()
}

fn check_qubits(n: usize, qubits: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &j in qubits {
        if j >= n {
            return Err(Error::QubitOutOfRange { index: j, n });
        }
        mask |= 1u64 << (n - 1 - j);
    }
    Ok(mask)
}

/// `2^{-|T|} tr_T(A) ⊗ 1_T`: zeroes every coefficient whose support meets `T`.
pub fn partial_average(f: &FourierOperator, qubits: &[usize]) -> Result<FourierOperator> {
    let mask = check_qubits(f.n, qubits)?;
    Ok(f.filtered(|s| s.support_mask() & mask == 0))
}

/// Dense counterpart of [`partial_average`], computed by partial traces.
pub fn partial_average_dense(a: &DenseOperator, qubits: &[usize]) -> Result<DenseOperator> {
    check_qubits(a.n, qubits)?;
    let set: BTreeSet<usize> = qubits.iter().copied().collect();
    let m = set
        .iter()
        .fold(a.matrix.clone(), |acc, &j| sites::site_expectation(&acc, a.n, j, &sites::MAXIMALLY_MIXED));
    Ok(DenseOperator { n: a.n, matrix: m })
}
