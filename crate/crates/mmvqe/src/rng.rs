//! Deterministic pseudo-randomness for the whole pipeline.
//!
//! Every stochastic component (estimator shot sampling, optimizer
//! perturbations, initial parameter draws, Lanczos start vectors) draws from
//! [`SplitMix64`], a counter-based 64-bit generator with a published
//! algorithm (Steele, Lea & Flood, "Fast splittable pseudorandom number
//! generators", OOPSLA 2014). Streams are derived from a master seed plus
//! integer stream labels via [`stream_seed`], so results are independent of
//! evaluation order and thread scheduling.

/// SplitMix64 generator state.
///
/// Algorithm: the state advances by the golden-ratio increment
/// 0x9E3779B97F4A7C15 and each output is finalized by two xor-shift-multiply
/// rounds (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX2: u64 = 0x94D0_49BB_1331_11EB;

/// The SplitMix64 output finalizer: a bijective mixing of one 64-bit word.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX2);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform double in [0, 1) with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform angle in [0, 2π).
    #[inline]
    pub fn next_angle(&mut self) -> f64 {
        self.next_f64() * std::f64::consts::TAU
    }

    /// Random sign in {−1.0, +1.0}.
    #[inline]
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 { 1.0 } else { -1.0 }
    }
}

/// Derive an independent stream seed from a master seed and two labels.
///
/// Used as `stream_seed(master, evaluation_index, term_index)` by the sampled
/// estimator and as `stream_seed(master, replica, salt)` by the driver. The
/// derivation is two chained applications of the SplitMix64 finalizer with
/// distinct multiplicative labels, so distinct (a, b) pairs map to
/// well-separated seeds.
#[inline]
pub fn stream_seed(master: u64, a: u64, b: u64) -> u64 {
    mix64(mix64(master ^ a.wrapping_mul(GOLDEN)) ^ b.wrapping_mul(MIX1))
}

/// Stable 64-bit fingerprint of a parameter vector (bit patterns folded
/// through the SplitMix64 finalizer); used to tag history entries.
pub fn hash_theta(theta: &[f64]) -> u64 {
    let mut h = 0x243F_6A88_85A3_08D3; // pi fraction, arbitrary fixed start
    for &x in theta {
        h = mix64(h ^ x.to_bits());
    }
    h
}
