//! Exact ground-state energies: matrix-free Lanczos plus a dense cross-check.
//!
//! A [`PauliSum`] is compiled into bit-mask form so that H·v costs
//! O(terms · 2ⁿ) with no matrix ever materialized. The ground energy comes
//! from a seeded Lanczos iteration with full reorthogonalization; the smallest
//! eigenvalue of each tridiagonal iterate is extracted by Sturm-sequence
//! bisection. For registers small enough to densify, [`dense_ground_energy`]
//! provides an independent eigensolver path (complex-Hermitian matrices are
//! embedded as real-symmetric ones of twice the dimension).
//!
//! Bit convention: qubit 0 is the most significant bit of the basis index,
//! matching the leftmost character of a Pauli label, so qubit q lives at bit
//! position n − 1 − q.

use crate::pauli::{Pauli, PauliError, PauliSum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Iteration cap for the Lanczos loop.
pub const LANCZOS_MAX_ITERS: usize = 500;
/// Convergence threshold on successive smallest Ritz values.
pub const LANCZOS_RITZ_TOL: f64 = 1e-9;
/// Largest register the matrix-free kernels accept (memory guard).
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, thiserror::Error)]
pub enum SpectraError {
    #[error("register of {0} qubits exceeds the {MAX_QUBITS}-qubit kernel limit")]
    TooManyQubits(usize),
    #[error("operator is empty")]
    EmptyOperator,
    #[error("Lanczos failed to converge within {0} iterations")]
    NoConvergence(usize),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// One Pauli term in bit-mask form: flips `x_mask`, picks up
/// `phase · (−1)^popcount(b & zy_mask)` on basis state b.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CompiledTerm {
    pub(crate) x_mask: u64,
    pub(crate) zy_mask: u64,
    pub(crate) phase: Complex64,
}

/// Mask form of a single unit-coefficient Pauli label vector.
pub(crate) fn masks_for(labels: &[Pauli]) -> CompiledTerm {
    let n = labels.len();
    let mut x_mask = 0u64;
    let mut zy_mask = 0u64;
    let mut n_y = 0u32;
    for (q, &p) in labels.iter().enumerate() {
        let bit = 1u64 << (n - 1 - q);
        match p {
            Pauli::I => {}
            Pauli::X => x_mask |= bit,
            Pauli::Y => {
                x_mask |= bit;
                zy_mask |= bit;
                n_y += 1;
            }
            Pauli::Z => zy_mask |= bit,
        }
    }
    // i^{n_Y} folded into the phase.
    let i_pow = match n_y % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    CompiledTerm { x_mask, zy_mask, phase: i_pow }
}

/// Apply one unit-coefficient Pauli string: y ← P·v.
pub(crate) fn apply_term_into(t: &CompiledTerm, v: &[Complex64], y: &mut [Complex64]) {
    for b in 0..v.len() as u64 {
        let sign = if (b & t.zy_mask).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
        y[(b ^ t.x_mask) as usize] = t.phase * Complex64::new(sign, 0.0) * v[b as usize];
    }
}

/// A Pauli sum compiled for matrix-free application.
#[derive(Clone, Debug)]
pub struct CompiledSum {
    n_qubits: usize,
    terms: Vec<CompiledTerm>,
}

impl CompiledSum {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Compile a Pauli sum into mask form. Works for any coefficients; the
/// eigensolvers additionally require Hermiticity, which callers enforce.
pub fn compile(h: &PauliSum) -> Result<CompiledSum, SpectraError> {
    let n = h.n_qubits();
    if n == 0 || h.is_empty() {
        return Err(SpectraError::EmptyOperator);
    }
    if n > MAX_QUBITS {
        return Err(SpectraError::TooManyQubits(n));
    }
    let mut terms = Vec::with_capacity(h.n_terms());
    for (labels, coeff) in h.label_vecs() {
        let mut t = masks_for(labels);
        t.phase *= coeff;
        terms.push(t);
    }
    Ok(CompiledSum { n_qubits: n, terms })
}

/// y ← H·v (matrix-free).
pub fn apply(h: &CompiledSum, v: &[Complex64]) -> Vec<Complex64> {
    let mut y = vec![Complex64::new(0.0, 0.0); v.len()];
    apply_into(h, v, &mut y);
    y
}

/// y ← H·v into a caller-provided buffer (overwritten).
pub fn apply_into(h: &CompiledSum, v: &[Complex64], y: &mut [Complex64]) {
    let dim = h.dim();
    assert_eq!(v.len(), dim, "state dimension mismatch");
    assert_eq!(y.len(), dim, "output dimension mismatch");
    y.iter_mut().for_each(|e| *e = Complex64::new(0.0, 0.0));
    for t in &h.terms {
        if t.x_mask == 0 && t.zy_mask == 0 {
            for (yb, vb) in y.iter_mut().zip(v) {
                *yb += t.phase * vb;
            }
        } else {
            for b in 0..dim as u64 {
                let sign = if (b & t.zy_mask).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
                y[(b ^ t.x_mask) as usize] += t.phase * Complex64::new(sign, 0.0) * v[b as usize];
            }
        }
    }
}

/// Result of a ground-energy computation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GroundResult {
    pub energy: f64,
    pub iterations: usize,
    pub seed: u64,
}

/// Smallest eigenvalue of the symmetric tridiagonal matrix with diagonal
/// `alpha` and off-diagonal `beta` (len alpha.len() − 1), by Sturm-sequence
/// bisection.
fn tridiag_smallest_eigenvalue(alpha: &[f64], beta: &[f64]) -> f64 {
    let m = alpha.len();
    debug_assert_eq!(beta.len(), m.saturating_sub(1));
    if m == 1 {
        return alpha[0];
    }
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..m {
        let r = if i > 0 { beta[i - 1].abs() } else { 0.0 }
            + if i + 1 < m { beta[i].abs() } else { 0.0 };
        lo = lo.min(alpha[i] - r);
        hi = hi.max(alpha[i] + r);
    }
    let scale = hi.abs().max(lo.abs()).max(1.0);
    // Number of eigenvalues strictly below x, via the Sturm recurrence.
    let count_below = |x: f64| -> usize {
        let mut count = 0usize;
        let mut d = 1.0f64;
        for i in 0..m {
            let off = if i > 0 { beta[i - 1] * beta[i - 1] / d } else { 0.0 };
            d = alpha[i] - x - off;
            if d == 0.0 {
                d = f64::EPSILON * scale;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-14 * scale {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bisection exhausted floating-point resolution
        }
        if count_below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Ground-state energy of a Hermitian Pauli sum by matrix-free Lanczos with
/// full reorthogonalization. Deterministic given `seed` (the random start
/// vector is drawn from a SplitMix64 stream keyed by it).
pub fn ground_energy(h: &PauliSum, seed: u64) -> Result<GroundResult, SpectraError> {
    h.require_hermitian(1e-10)?;
    let compiled = compile(h)?;
    let dim = compiled.dim();

    // Seeded random start vector, normalized.
    let mut rng = crate::rng::SplitMix64::new(crate::rng::stream_seed(seed, 0x17ead, 0));
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|e| *e /= nv);

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let mut prev_ritz = f64::INFINITY;

    for j in 0..LANCZOS_MAX_ITERS.min(dim) {
        basis.push(v.clone());
        apply_into(&compiled, &v, &mut w);
        let alpha = dot(&v, &w).re;
        alphas.push(alpha);

        // w ← w − α v − β v_prev, then full reorthogonalization (twice).
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= Complex64::new(alpha, 0.0) * vi;
        }
        if j > 0 {
            let beta = betas[j - 1];
            for (wi, pi) in w.iter_mut().zip(&basis[j - 1]) {
                *wi -= Complex64::new(beta, 0.0) * pi;
            }
        }
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                if c.norm() > 0.0 {
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi -= c * bi;
                    }
                }
            }
        }

        let ritz = tridiag_smallest_eigenvalue(&alphas, &betas);
        let beta_next = norm(&w);
        let converged = (ritz - prev_ritz).abs() < LANCZOS_RITZ_TOL;
        // β ≈ 0 means the Krylov space is invariant: the Ritz value is exact.
        if converged || beta_next < 1e-12 || j + 1 == dim {
            return Ok(GroundResult { energy: ritz, iterations: j + 1, seed });
        }
        prev_ritz = ritz;
        betas.push(beta_next);
        v = w.iter().map(|e| e / beta_next).collect();
    }
    Err(SpectraError::NoConvergence(LANCZOS_MAX_ITERS))
}

/// Ground-state energy through a dense eigensolver. The complex-Hermitian
/// matrix H = A + iB is embedded as the real-symmetric [[A, −B], [B, A]]
/// (eigenvalues doubled, values preserved). Intended for ≤ 9-qubit registers.
pub fn dense_ground_energy(h: &PauliSum) -> Result<f64, SpectraError> {
    h.require_hermitian(1e-10)?;
    let m = h.to_dense()?;
    let dim = m.nrows();
    let mut embedded = DMatrix::<f64>::zeros(2 * dim, 2 * dim);
    for i in 0..dim {
        for j in 0..dim {
            let e = m[(i, j)];
            embedded[(i, j)] = e.re;
            embedded[(dim + i, dim + j)] = e.re;
            embedded[(i, dim + j)] = -e.im;
            embedded[(dim + i, j)] = e.im;
        }
    }
    let eig = embedded.symmetric_eigen();
    Ok(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}
