//! Statevector simulation and expectation estimation.
//!
//! Gates follow the standard rotation conventions R(θ) = exp(−i(θ/2)·σ):
//!
//! ```text
//! RY = [[cos(θ/2), −sin(θ/2)],     RZ = [[e^{−iθ/2},      0    ],
//!       [sin(θ/2),  cos(θ/2)]]           [    0,      e^{+iθ/2}]]
//! RX = [[cos(θ/2), −i sin(θ/2)],    Y = [[0, −i],
//!       [−i sin(θ/2), cos(θ/2)]]         [i,   0]]
//! ```
//!
//! CX and CRX act with the first index as control; PauliRot applies
//! exp(−i(θ/2)·P) via the identity exp(−i(θ/2)P)v = cos(θ/2)v − i sin(θ/2)Pv.
//! Qubit 0 is the most significant bit of the amplitude index.
//!
//! Expectation values come in two modes. Exact: Re⟨v|Hv⟩ by matrix-free
//! application. Sampled: each non-identity Pauli term is measured
//! independently — the state is rotated into the term's Z-eigenbasis
//! (H on X qubits; S† then H on Y qubits), `shots` bitstrings are drawn from
//! the exact distribution by inverse-CDF sampling, and the ±1 parities over
//! the term's support are averaged. Identity terms contribute analytically.
//! Each term draws from its own counter-keyed SplitMix64 stream
//! (master seed, evaluation index, term index), so results are independent
//! of evaluation order and of any parallelism over terms.

use crate::ansatz::{Circuit, Gate};
use crate::pauli::{Pauli, PauliError, PauliSum};
use crate::rng::{stream_seed, SplitMix64};
use crate::spectra::{self, CompiledSum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("θ has {got} entries but the circuit has {want} parameters")]
    ParamCount { got: usize, want: usize },
    #[error("state has dimension {state_dim} but the operator acts on {op_dim}")]
    DimensionMismatch { state_dim: usize, op_dim: usize },
    #[error("expectation has non-negligible imaginary part {0:e}")]
    NonRealExpectation(f64),
    #[error("shots must be ≥ 1 in sampled mode")]
    NoShots,
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Spectra(#[from] spectra::SpectraError),
}

/// Expectation-estimation mode.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorMode {
    Exact,
    Sampled,
}

/// Estimator settings: mode, shot budget, and master seed.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub mode: EstimatorMode,
    pub shots: u64,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig { mode: EstimatorMode::Sampled, shots: 1024, seed: 0 }
    }
}

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn bit_of(n_qubits: usize, qubit: usize) -> u64 {
    1u64 << (n_qubits - 1 - qubit)
}

/// Apply a 2×2 unitary [[a, b], [c, d]] to the target qubit, in place.
fn apply_1q(v: &mut [Complex64], bit: u64, a: Complex64, b: Complex64, c: Complex64, d: Complex64) {
    let dim = v.len() as u64;
    let mut i = 0u64;
    while i < dim {
        if i & bit == 0 {
            let j = (i | bit) as usize;
            let v0 = v[i as usize];
            let v1 = v[j];
            v[i as usize] = a * v0 + b * v1;
            v[j] = c * v0 + d * v1;
        }
        i += 1;
    }
}

/// Apply a controlled 2×2 unitary (control bit set) to the target, in place.
fn apply_controlled_1q(
    v: &mut [Complex64],
    control: u64,
    target: u64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) {
    let dim = v.len() as u64;
    let mut i = 0u64;
    while i < dim {
        if i & control != 0 && i & target == 0 {
            let j = (i | target) as usize;
            let v0 = v[i as usize];
            let v1 = v[j];
            v[i as usize] = a * v0 + b * v1;
            v[j] = c * v0 + d * v1;
        }
        i += 1;
    }
}

/// Simulate a circuit on |0…0⟩.
pub fn simulate(circuit: &Circuit, theta: &[f64]) -> Result<Vec<Complex64>, SimError> {
    if theta.len() != circuit.n_params() {
        return Err(SimError::ParamCount { got: theta.len(), want: circuit.n_params() });
    }
    let n = circuit.n_qubits();
    let dim = 1usize << n;
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[0] = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut scratch = vec![zero; dim];

    for gate in circuit.gates() {
        match gate {
            Gate::Ry { qubit, slot } => {
                let (s, c) = (theta[*slot] / 2.0).sin_cos();
                apply_1q(
                    &mut v,
                    bit_of(n, *qubit),
                    Complex64::new(c, 0.0),
                    Complex64::new(-s, 0.0),
                    Complex64::new(s, 0.0),
                    Complex64::new(c, 0.0),
                );
            }
            Gate::Rz { qubit, slot } => {
                let half = theta[*slot] / 2.0;
                let e_minus = Complex64::new(half.cos(), -half.sin());
                let e_plus = Complex64::new(half.cos(), half.sin());
                apply_1q(&mut v, bit_of(n, *qubit), e_minus, zero, zero, e_plus);
            }
            Gate::Y { qubit } => {
                apply_1q(
                    &mut v,
                    bit_of(n, *qubit),
                    zero,
                    Complex64::new(0.0, -1.0),
                    Complex64::new(0.0, 1.0),
                    zero,
                );
            }
            Gate::Cx { control, target } => {
                let one = Complex64::new(1.0, 0.0);
                apply_controlled_1q(
                    &mut v,
                    bit_of(n, *control),
                    bit_of(n, *target),
                    zero,
                    one,
                    one,
                    zero,
                );
            }
            Gate::Crx { control, target, slot } => {
                let (s, c) = (theta[*slot] / 2.0).sin_cos();
                let cc = Complex64::new(c, 0.0);
                let ms = Complex64::new(0.0, -s);
                apply_controlled_1q(
                    &mut v,
                    bit_of(n, *control),
                    bit_of(n, *target),
                    cc,
                    ms,
                    ms,
                    cc,
                );
            }
            Gate::PauliRot { labels, slot } => {
                let (s, c) = (theta[*slot] / 2.0).sin_cos();
                let term = spectra::masks_for(labels);
                spectra::apply_term_into(&term, &v, &mut scratch);
                let cos_c = Complex64::new(c, 0.0);
                let msin = Complex64::new(0.0, -s);
                for (vi, pi) in v.iter_mut().zip(&scratch) {
                    *vi = cos_c * *vi + msin * pi;
                }
            }
        }
    }
    Ok(v)
}

/// Exact expectation Re⟨v|H v⟩ from a precompiled operator.
pub fn expectation_exact_compiled(v: &[Complex64], h: &CompiledSum) -> Result<f64, SimError> {
    if v.len() != h.dim() {
        return Err(SimError::DimensionMismatch { state_dim: v.len(), op_dim: h.dim() });
    }
    let hv = spectra::apply(h, v);
    let val: Complex64 = v.iter().zip(&hv).map(|(a, b)| a.conj() * b).sum();
    if val.im.abs() >= 1e-9 {
        return Err(SimError::NonRealExpectation(val.im));
    }
    Ok(val.re)
}

/// Exact expectation Re⟨v|H v⟩.
pub fn expectation_exact(v: &[Complex64], h: &PauliSum) -> Result<f64, SimError> {
    h.require_hermitian(1e-10)?;
    expectation_exact_compiled(v, &spectra::compile(h)?)
}

/// One Pauli term prepared for repeated sampled estimation.
struct PreparedTerm {
    /// Real coefficient (Hermitian operator).
    coeff: f64,
    /// Qubits carrying X (basis change H).
    x_bits: Vec<u64>,
    /// Qubits carrying Y (basis change S† then H).
    y_bits: Vec<u64>,
    /// All non-identity qubits (parity support after rotation).
    support_mask: u64,
    /// Stable index for seeding, assigned in canonical term order.
    index: u64,
}

/// A Hermitian Pauli sum prepared for the sampled estimator.
pub struct PreparedEstimator {
    n_qubits: usize,
    identity: f64,
    terms: Vec<PreparedTerm>,
}

impl PreparedEstimator {
    pub fn new(h: &PauliSum) -> Result<Self, SimError> {
        h.require_hermitian(1e-10)?;
        let n = h.n_qubits();
        let mut identity = 0.0;
        let mut terms = Vec::new();
        for (index, (labels, coeff)) in h.label_vecs().enumerate() {
            let mut x_bits = Vec::new();
            let mut y_bits = Vec::new();
            let mut support_mask = 0u64;
            for (q, &p) in labels.iter().enumerate() {
                let bit = bit_of(n, q);
                match p {
                    Pauli::I => {}
                    Pauli::X => {
                        x_bits.push(bit);
                        support_mask |= bit;
                    }
                    Pauli::Y => {
                        y_bits.push(bit);
                        support_mask |= bit;
                    }
                    Pauli::Z => support_mask |= bit,
                }
            }
            if support_mask == 0 {
                identity += coeff.re;
            } else {
                terms.push(PreparedTerm {
                    coeff: coeff.re,
                    x_bits,
                    y_bits,
                    support_mask,
                    index: index as u64,
                });
            }
        }
        Ok(PreparedEstimator { n_qubits: n, identity, terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Estimate ⟨H⟩ on `v` with fresh sampling noise for the given
    /// evaluation index. Deterministic in (seed, eval_index).
    pub fn estimate(
        &self,
        v: &[Complex64],
        shots: u64,
        seed: u64,
        eval_index: u64,
    ) -> Result<f64, SimError> {
        if shots == 0 {
            return Err(SimError::NoShots);
        }
        let dim = 1usize << self.n_qubits;
        if v.len() != dim {
            return Err(SimError::DimensionMismatch { state_dim: v.len(), op_dim: dim });
        }
        let mut total = self.identity;
        let mut rotated = vec![Complex64::new(0.0, 0.0); dim];
        let mut cdf = vec![0.0f64; dim];
        let zero = Complex64::new(0.0, 0.0);
        let h_a = Complex64::new(INV_SQRT2, 0.0);

        for term in &self.terms {
            rotated.copy_from_slice(v);
            // S† = diag(1, −i), then H, on Y qubits; H alone on X qubits.
            for &bit in &term.y_bits {
                apply_1q(&mut rotated, bit, Complex64::new(1.0, 0.0), zero, zero, Complex64::new(0.0, -1.0));
                apply_1q(&mut rotated, bit, h_a, h_a, h_a, -h_a);
            }
            for &bit in &term.x_bits {
                apply_1q(&mut rotated, bit, h_a, h_a, h_a, -h_a);
            }
            // Exact outcome distribution, cumulative.
            let mut acc = 0.0;
            for (slot, amp) in cdf.iter_mut().zip(&rotated) {
                acc += amp.norm_sqr();
                *slot = acc;
            }
            let norm = acc;
            // Inverse-CDF draws; average the ±1 parities over the support.
            let mut rng = SplitMix64::new(stream_seed(seed, eval_index, term.index));
            let mut sum = 0i64;
            for _ in 0..shots {
                let r = rng.next_f64() * norm;
                let b = cdf.partition_point(|&p| p <= r).min(dim - 1) as u64;
                sum += if (b & term.support_mask).count_ones() & 1 == 1 { -1 } else { 1 };
            }
            total += term.coeff * (sum as f64 / shots as f64);
        }
        Ok(total)
    }
}

/// Sampled expectation estimate (convenience wrapper at evaluation index 0).
pub fn expectation_sampled(
    v: &[Complex64],
    h: &PauliSum,
    cfg: &EstimatorConfig,
) -> Result<f64, SimError> {
    match cfg.mode {
        EstimatorMode::Exact => expectation_exact(v, h),
        EstimatorMode::Sampled => PreparedEstimator::new(h)?.estimate(v, cfg.shots, cfg.seed, 0),
    }
}
