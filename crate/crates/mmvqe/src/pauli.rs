//! Exact symbolic algebra on Pauli strings.
//!
//! A [`PauliString`] is a tensor product of single-qubit operators from
//! {I, X, Y, Z} with a complex coefficient; a [`PauliSum`] is a simplified,
//! deduplicated linear combination of them. Products track the multiplicative
//! phase (±1, ±i) per qubit, sums merge identical label sequences, and small
//! dense blocks convert to and from the Pauli basis via the trace inner
//! product Tr(P·M)/2^k.
//!
//! Display convention: the leftmost label character is qubit 0 and the first
//! tensor factor, so `to_dense` is the Kronecker product of the per-qubit
//! matrices read left to right (qubit 0 owns the most significant bit of the
//! basis index).

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Pruning tolerance used when simplifying Hamiltonian sums: far below the
/// physical coefficient scale (0.05–7.5) yet far above f64 accumulation error.
pub const PRUNE_TOL: f64 = 1e-10;

/// Hard capacity limit for dense conversion (2^9 = 512 amplitudes).
pub const DENSE_QUBIT_LIMIT: usize = 9;

/// Errors from Pauli-algebra operations.
#[derive(Debug, thiserror::Error)]
pub enum PauliError {
    #[error("qubit-count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dense conversion limited to {DENSE_QUBIT_LIMIT} qubits, got {0}")]
    Capacity(usize),
    #[error("dense block dimension {0} is not 2 or 4")]
    BadBlockDim(usize),
    #[error("cannot parse Pauli label character {0:?}")]
    BadLabel(char),
    #[error("cannot parse term line {0:?}")]
    BadTermLine(String),
    #[error("sum is not Hermitian: term {0} has imaginary coefficient {1:e}")]
    NotHermitian(String, f64),
    #[error("empty label string")]
    EmptyLabel,
}

/// Single-qubit Pauli operator. The discriminant order matches ASCII order of
/// the letters so that derived lexicographic ordering of label vectors agrees
/// with ordering of the rendered strings.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self, PauliError> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(PauliError::BadLabel(other)),
        }
    }

    /// 2×2 matrix of this operator.
    pub fn matrix(self) -> DMatrix<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

/// Single-qubit product σ_a σ_b = phase · σ_c with phase ∈ {1, −1, i, −i}.
#[inline]
pub fn pauli_mul(a: Pauli, b: Pauli) -> (Complex64, Pauli) {
    use Pauli::*;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (a, b) {
        (I, p) => (one, p),
        (p, I) => (one, p),
        (X, X) | (Y, Y) | (Z, Z) => (one, I),
        (X, Y) => (i, Z),
        (Y, X) => (-i, Z),
        (Y, Z) => (i, X),
        (Z, Y) => (-i, X),
        (Z, X) => (i, Y),
        (X, Z) => (-i, Y),
    }
}

/// A tensor product of single-qubit Paulis with a complex coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct PauliString {
    pub labels: Vec<Pauli>,
    pub coeff: Complex64,
}

impl PauliString {
    pub fn new(labels: Vec<Pauli>, coeff: Complex64) -> Self {
        Self { labels, coeff }
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    /// Parse a label string such as `"IXXIXX"`.
    pub fn parse(label: &str, coeff: Complex64) -> Result<Self, PauliError> {
        if label.is_empty() {
            return Err(PauliError::EmptyLabel);
        }
        let labels = label
            .chars()
            .map(Pauli::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { labels, coeff })
    }

    /// The identity string on n qubits with the given coefficient.
    pub fn identity(n_qubits: usize, coeff: Complex64) -> Self {
        Self { labels: vec![Pauli::I; n_qubits], coeff }
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().all(|&p| p == Pauli::I)
    }

    /// Rendered label part (no coefficient), e.g. `"XXIXXI"`.
    pub fn label_string(&self) -> String {
        self.labels.iter().map(|p| p.as_char()).collect()
    }

    /// Phase-tracked product: per-qubit Pauli products with the accumulated
    /// phase folded into the coefficient.
    pub fn mul(&self, other: &Self) -> Result<Self, PauliError> {
        if self.labels.len() != other.labels.len() {
            return Err(PauliError::DimensionMismatch(
                self.labels.len(),
                other.labels.len(),
            ));
        }
        let mut coeff = self.coeff * other.coeff;
        let labels = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| {
                let (phase, c) = pauli_mul(a, b);
                coeff *= phase;
                c
            })
            .collect();
        Ok(Self { labels, coeff })
    }

    /// Tensor composition: labels concatenated, coefficients multiplied.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Self { labels, coeff: self.coeff * other.coeff }
    }

    /// Dense 2^n × 2^n matrix (Kronecker product of per-qubit matrices,
    /// leftmost label first).
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>, PauliError> {
        if self.labels.len() > DENSE_QUBIT_LIMIT {
            return Err(PauliError::Capacity(self.labels.len()));
        }
        let mut m = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for &p in &self.labels {
            m = m.kronecker(&p.matrix());
        }
        Ok(m * self.coeff)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.label_string(),
            self.coeff.re,
            self.coeff.im
        )
    }
}

/// A simplified linear combination of Pauli strings over a fixed qubit count.
///
/// Terms are stored in a BTreeMap keyed by the label vector, so iteration is
/// always in canonical lexicographic order and serialization is
/// deterministic.
#[derive(Clone, PartialEq, Debug)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<Vec<Pauli>, Complex64>,
}

impl PauliSum {
    /// The empty sum on n qubits.
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: BTreeMap::new() }
    }

    /// Build from raw strings: coefficients of identical label sequences are
    /// summed and terms with |coeff| < tol are dropped.
    pub fn from_strings<I>(n_qubits: usize, strings: I, tol: f64) -> Result<Self, PauliError>
    where
        I: IntoIterator<Item = PauliString>,
    {
        let mut sum = Self::zero(n_qubits);
        for s in strings {
            if s.labels.len() != n_qubits {
                return Err(PauliError::DimensionMismatch(n_qubits, s.labels.len()));
            }
            sum.accumulate(s.labels, s.coeff);
        }
        sum.prune(tol);
        Ok(sum)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff · labels` without pruning (used during accumulation).
    pub fn accumulate(&mut self, labels: Vec<Pauli>, coeff: Complex64) {
        debug_assert_eq!(labels.len(), self.n_qubits);
        let slot = self
            .terms
            .entry(labels)
            .or_insert_with(|| Complex64::new(0.0, 0.0));
        *slot += coeff;
    }

    /// Drop terms with |coeff| < tol (exact zeros always go). Idempotent.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() >= tol && c.norm() > 0.0);
    }

    /// Replace coefficient components (real and imaginary separately) smaller
    /// than `tol` in magnitude by exact zeros. Used by Hamiltonian builders to
    /// remove numerical dust so serialized output is clean and stable.
    pub fn chop(&mut self, tol: f64) {
        for c in self.terms.values_mut() {
            if c.re.abs() < tol {
                c.re = 0.0;
            }
            if c.im.abs() < tol {
                c.im = 0.0;
            }
        }
        self.terms.retain(|_, c| c.norm() > 0.0);
    }

    /// Coefficient of a label sequence (zero if absent).
    pub fn coeff(&self, labels: &[Pauli]) -> Complex64 {
        self.terms
            .get(labels)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Coefficient looked up by rendered label string, e.g. `"IXXIXX"`.
    pub fn coeff_of(&self, label: &str) -> Result<Complex64, PauliError> {
        let s = PauliString::parse(label, Complex64::new(1.0, 0.0))?;
        Ok(self.coeff(&s.labels))
    }

    /// Iterate terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms
            .iter()
            .map(|(labels, &coeff)| PauliString { labels: labels.clone(), coeff })
    }

    /// Labels in canonical order (borrowed).
    pub fn label_vecs(&self) -> impl Iterator<Item = (&[Pauli], Complex64)> + '_ {
        self.terms.iter().map(|(l, &c)| (l.as_slice(), c))
    }

    /// Sum of two Pauli sums.
    pub fn add(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        let mut out = self.clone();
        for (labels, &coeff) in &other.terms {
            out.accumulate(labels.clone(), coeff);
        }
        out.prune(PRUNE_TOL);
        Ok(out)
    }

    /// Scale every coefficient.
    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out
    }

    /// Distributive product of two sums (phase-tracked term-by-term).
    pub fn mul(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        let mut out = Self::zero(self.n_qubits);
        for (la, &ca) in &self.terms {
            for (lb, &cb) in &other.terms {
                let mut coeff = ca * cb;
                let labels: Vec<Pauli> = la
                    .iter()
                    .zip(lb)
                    .map(|(&a, &b)| {
                        let (phase, c) = pauli_mul(a, b);
                        coeff *= phase;
                        c
                    })
                    .collect();
                out.accumulate(labels, coeff);
            }
        }
        out.prune(PRUNE_TOL);
        Ok(out)
    }

    /// True when every coefficient is real to within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() < tol)
    }

    /// Error with the offending term unless Hermitian to within `tol`.
    pub fn require_hermitian(&self, tol: f64) -> Result<(), PauliError> {
        for (labels, c) in &self.terms {
            if c.im.abs() >= tol {
                let label: String = labels.iter().map(|p| p.as_char()).collect();
                return Err(PauliError::NotHermitian(label, c.im));
            }
        }
        Ok(())
    }

    /// Sum of |coeff| over all terms (used for the shot-noise bound).
    pub fn coeff_l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Dense 2^n × 2^n matrix. Capacity-limited to 9 qubits.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>, PauliError> {
        if self.n_qubits > DENSE_QUBIT_LIMIT {
            return Err(PauliError::Capacity(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for term in self.terms() {
            m += term.to_dense()?;
        }
        Ok(m)
    }

    /// Decompose a 2×2 or 4×4 dense block into the Pauli basis via
    /// Σ_P Tr(P·M)/2^k · P over all 4^k strings.
    pub fn decompose_dense(m: &DMatrix<Complex64>) -> Result<Self, PauliError> {
        let dim = m.nrows();
        if m.ncols() != dim || (dim != 2 && dim != 4) {
            return Err(PauliError::BadBlockDim(dim));
        }
        let k = if dim == 2 { 1 } else { 2 };
        let paulis = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        let mut sum = Self::zero(k);
        let norm = 1.0 / dim as f64;
        let combos: Vec<Vec<Pauli>> = if k == 1 {
            paulis.iter().map(|&p| vec![p]).collect()
        } else {
            paulis
                .iter()
                .flat_map(|&a| paulis.iter().map(move |&b| vec![a, b]))
                .collect()
        };
        for labels in combos {
            let p = PauliString::new(labels.clone(), Complex64::new(1.0, 0.0));
            let pd = p.to_dense()?;
            // Tr(P·M): P is Hermitian, so this is the Hilbert–Schmidt inner product.
            let tr: Complex64 = (pd * m).diagonal().iter().sum();
            let coeff = tr * norm;
            if coeff.norm() >= PRUNE_TOL {
                sum.accumulate(labels, coeff);
            }
        }
        Ok(sum)
    }

    /// Canonical text serialization: one term per line,
    /// `<label-string> <real> <imag>`, lexicographically sorted by label.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (labels, coeff) in &self.terms {
            let label: String = labels.iter().map(|p| p.as_char()).collect();
            out.push_str(&format!("{} {} {}\n", label, coeff.re, coeff.im));
        }
        out
    }

    /// Parse the text format produced by [`render`](Self::render).
    pub fn parse(text: &str) -> Result<Self, PauliError> {
        let mut terms = Vec::new();
        let mut n_qubits = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (label, re, im) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(l), Some(re), Some(im), None) => (l, re, im),
                _ => return Err(PauliError::BadTermLine(line.to_string())),
            };
            let re: f64 = re
                .parse()
                .map_err(|_| PauliError::BadTermLine(line.to_string()))?;
            let im: f64 = im
                .parse()
                .map_err(|_| PauliError::BadTermLine(line.to_string()))?;
            let s = PauliString::parse(label, Complex64::new(re, im))?;
            if let Some(n) = n_qubits {
                if s.labels.len() != n {
                    return Err(PauliError::DimensionMismatch(n, s.labels.len()));
                }
            } else {
                n_qubits = Some(s.labels.len());
            }
            terms.push(s);
        }
        let n = n_qubits.ok_or(PauliError::EmptyLabel)?;
        Self::from_strings(n, terms, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Oracle: compare a symbolic product against the dense matrix product.
    fn assert_mul_matches_dense(a: &PauliString, b: &PauliString) {
        let sym = a.mul(b).unwrap().to_dense().unwrap();
        let dense = a.to_dense().unwrap() * b.to_dense().unwrap();
        assert!(
            (&sym - &dense).iter().all(|e| e.norm() < 1e-12),
            "symbolic product disagrees with dense oracle for {} × {}",
            a.label_string(),
            b.label_string()
        );
    }

    #[test]
    fn single_qubit_products_match_dense_oracle() {
        let paulis = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for &a in &paulis {
            for &b in &paulis {
                let pa = PauliString::new(vec![a], c(1.0, 0.0));
                let pb = PauliString::new(vec![b], c(1.0, 0.0));
                assert_mul_matches_dense(&pa, &pb);
            }
        }
    }

    #[test]
    fn known_products() {
        // X·Y = iZ
        let x = PauliString::parse("X", c(1.0, 0.0)).unwrap();
        let y = PauliString::parse("Y", c(1.0, 0.0)).unwrap();
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.label_string(), "Z");
        assert_abs_diff_eq!(xy.coeff.im, 1.0, epsilon = 1e-15);
        // XX · XY = iIZ (per-qubit: X·X = I, X·Y = iZ)
        let a = PauliString::parse("XX", c(1.0, 0.0)).unwrap();
        let b = PauliString::parse("XY", c(1.0, 0.0)).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.label_string(), "IZ");
        assert_abs_diff_eq!(ab.coeff.im, 1.0, epsilon = 1e-15);
        assert_mul_matches_dense(&a, &b);
        // identity absorbs
        let p = PauliString::parse("XYZ", c(2.5, -0.5)).unwrap();
        let id = PauliString::identity(3, c(1.0, 0.0));
        let pid = p.mul(&id).unwrap();
        assert_eq!(pid, p);
    }

    #[test]
    fn tensor_concatenates() {
        let a = PauliString::parse("X", c(2.0, 0.0)).unwrap();
        let b = PauliString::parse("I", c(1.0, 0.0)).unwrap();
        assert_eq!(a.tensor(&b).label_string(), "XI");
        let z = PauliString::parse("Z", c(2.0, 0.0)).unwrap();
        let y = PauliString::parse("Y", c(3.0, 0.0)).unwrap();
        let zy = z.tensor(&y);
        assert_eq!(zy.label_string(), "ZY");
        assert_abs_diff_eq!(zy.coeff.re, 6.0, epsilon = 1e-15);
        // associativity witness
        let x = PauliString::parse("X", c(1.0, 0.0)).unwrap();
        let t1 = x.tensor(&y).tensor(&z);
        let t2 = x.tensor(&y.tensor(&z));
        assert_eq!(t1, t2);
    }

    #[test]
    fn simplify_merges_cancels_prunes() {
        let z = PauliString::parse("Z", c(1.0, 0.0)).unwrap();
        let mz = PauliString::parse("Z", c(-1.0, 0.0)).unwrap();
        let sum = PauliSum::from_strings(1, [z, mz], PRUNE_TOL).unwrap();
        assert!(sum.is_empty());

        let x1 = PauliString::parse("X", c(0.5, 0.0)).unwrap();
        let x2 = PauliString::parse("X", c(0.5, 0.0)).unwrap();
        let sum = PauliSum::from_strings(1, [x1, x2], PRUNE_TOL).unwrap();
        assert_eq!(sum.n_terms(), 1);
        assert_abs_diff_eq!(sum.coeff_of("X").unwrap().re, 1.0, epsilon = 1e-15);

        let tiny = PauliString::parse("Y", c(1e-14, 0.0)).unwrap();
        let sum = PauliSum::from_strings(1, [tiny], PRUNE_TOL).unwrap();
        assert!(sum.is_empty());
    }

    #[test]
    fn decompose_known_blocks() {
        // [[0,1],[0,0]] = (X + iY)/2
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let sum = PauliSum::decompose_dense(&m).unwrap();
        assert_abs_diff_eq!(sum.coeff_of("X").unwrap().re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(sum.coeff_of("Y").unwrap().im, 0.5, epsilon = 1e-12);
        assert_eq!(sum.n_terms(), 2);
        // identity decomposes to itself
        let id = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let sum = PauliSum::decompose_dense(&id).unwrap();
        assert_eq!(sum.n_terms(), 1);
        assert_abs_diff_eq!(sum.coeff_of("I").unwrap().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn dense_roundtrip_diagonal_sums() {
        // {Z: 1} → diag(1, −1); {I: a, Z: b} → diag(a+b, a−b)
        let z = PauliSum::from_strings(
            1,
            [PauliString::parse("Z", c(1.0, 0.0)).unwrap()],
            PRUNE_TOL,
        )
        .unwrap();
        let d = z.to_dense().unwrap();
        assert_abs_diff_eq!(d[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d[(1, 1)].re, -1.0, epsilon = 1e-15);

        let s = PauliSum::from_strings(
            1,
            [
                PauliString::parse("I", c(2.0, 0.0)).unwrap(),
                PauliString::parse("Z", c(0.5, 0.0)).unwrap(),
            ],
            PRUNE_TOL,
        )
        .unwrap();
        let d = s.to_dense().unwrap();
        assert_abs_diff_eq!(d[(0, 0)].re, 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d[(1, 1)].re, 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d[(0, 1)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn render_parse_roundtrip_and_order() {
        let s = PauliSum::from_strings(
            2,
            [
                PauliString::parse("ZI", c(-0.5, 0.0)).unwrap(),
                PauliString::parse("IX", c(0.25, 0.0)).unwrap(),
                PauliString::parse("YY", c(0.0, 1.0)).unwrap(),
            ],
            PRUNE_TOL,
        )
        .unwrap();
        let text = s.render();
        let lines: Vec<&str> = text.lines().collect();
        // lexicographic: IX < YY < ZI
        assert!(lines[0].starts_with("IX "));
        assert!(lines[1].starts_with("YY "));
        assert!(lines[2].starts_with("ZI "));
        let back = PauliSum::parse(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn hermiticity_check() {
        let h = PauliSum::from_strings(
            1,
            [PauliString::parse("Z", c(1.0, 1e-12)).unwrap()],
            PRUNE_TOL,
        )
        .unwrap();
        assert!(h.is_hermitian(1e-10));
        let bad = PauliSum::from_strings(
            1,
            [PauliString::parse("Z", c(1.0, 0.5)).unwrap()],
            PRUNE_TOL,
        )
        .unwrap();
        assert!(!bad.is_hermitian(1e-10));
        assert!(bad.require_hermitian(1e-10).is_err());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = PauliString::parse("XX", c(1.0, 0.0)).unwrap();
        let b = PauliString::parse("X", c(1.0, 0.0)).unwrap();
        assert!(a.mul(&b).is_err());
        assert!(PauliSum::from_strings(2, [b], PRUNE_TOL).is_err());
    }

    // ---- property tests ----

    fn arb_pauli() -> impl Strategy<Value = Pauli> {
        prop_oneof![
            Just(Pauli::I),
            Just(Pauli::X),
            Just(Pauli::Y),
            Just(Pauli::Z)
        ]
    }

    fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
        (
            proptest::collection::vec(arb_pauli(), n),
            -2.0f64..2.0,
            -2.0f64..2.0,
        )
            .prop_map(|(labels, re, im)| PauliString::new(labels, Complex64::new(re, im)))
    }

    proptest! {
        #[test]
        fn phase_group_closure(a in arb_string(3), b in arb_string(3)) {
            let unit_a = PauliString::new(a.labels.clone(), c(1.0, 0.0));
            let unit_b = PauliString::new(b.labels.clone(), c(1.0, 0.0));
            let phi = unit_a.mul(&unit_b).unwrap().coeff;
            let candidates = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
            prop_assert!(candidates.iter().any(|&g| (phi - g).norm() < 1e-12));
        }

        #[test]
        fn product_matches_dense_oracle(a in arb_string(2), b in arb_string(2)) {
            let sym = a.mul(&b).unwrap().to_dense().unwrap();
            let dense = a.to_dense().unwrap() * b.to_dense().unwrap();
            prop_assert!((&sym - &dense).iter().all(|e| e.norm() < 1e-10));
        }

        #[test]
        fn anticommutation_of_distinct_nonidentity(a in arb_pauli(), b in arb_pauli()) {
            prop_assume!(a != b && a != Pauli::I && b != Pauli::I);
            let pa = PauliString::new(vec![a], c(1.0, 0.0));
            let pb = PauliString::new(vec![b], c(1.0, 0.0));
            let ab = pa.mul(&pb).unwrap();
            let ba = pb.mul(&pa).unwrap();
            prop_assert_eq!(ab.labels, ba.labels);
            prop_assert!((ab.coeff + ba.coeff).norm() < 1e-12, "expected anticommutation");
        }

        #[test]
        fn decompose_roundtrip_2q(entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16)) {
            let m = DMatrix::from_iterator(4, 4, entries.iter().map(|&(re, im)| Complex64::new(re, im)));
            let sum = PauliSum::decompose_dense(&m).unwrap();
            let back = sum.to_dense().unwrap();
            prop_assert!((&back - &m).iter().all(|e| e.norm() < 1e-12));
        }

        #[test]
        fn simplify_is_idempotent(strings in proptest::collection::vec(arb_string(2), 1..8)) {
            let once = PauliSum::from_strings(2, strings.clone(), PRUNE_TOL).unwrap();
            let twice = PauliSum::from_strings(2, once.terms(), PRUNE_TOL).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}
