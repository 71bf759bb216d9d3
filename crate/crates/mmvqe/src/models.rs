//! Compilation of truncated SU(2) matrix-model Hamiltonians into Pauli sums.
//!
//! Three models are supported, parameterized by the 't Hooft coupling
//! λ = g²N with N = 2 (so g² = λ/2):
//!
//! * **Bosonic, cutoff Λ=2** — 6 bosonic modes, one qubit each (6 qubits,
//!   10 Pauli terms).
//! * **Bosonic, cutoff Λ=4** — 6 bosonic modes, two qubits each (12 qubits,
//!   895 Pauli terms).
//! * **Supersymmetric (minimal BMN), cutoff Λ=2** — 6 bosonic modes plus
//!   3 Jordan–Wigner fermions (9 qubits, 25 Pauli terms).
//!
//! The bosonic Hamiltonian is the normal-ordered form
//!
//! ```text
//! Ĥ = m Σ_{I,α} (n̂_{Iα} + ½)
//!   + (g²/16m²) Σ_{γ,I,J} [ Σ_{α,β} f_{αβγ} x̃_{Iα} x̃_{Jβ} ]²
//! ```
//!
//! with x̃ = â + â†, structure constants f_{αβγ} = √2 ε_{αβγ}, masses m = 1,
//! and each mode's ladder operators truncated at the Fock cutoff. The
//! supersymmetric model adds the fermion mass term (3μ/2) Σ_α ζ†_α ζ_α, the
//! −3μ constant, the quartic bosonic interaction, and the boson–fermion cubic
//! coupling, with μ = 1.
//!
//! Mode layout: mode (I, α) has index 3(I−1) + (α−1); at Λ=2 that index is
//! the qubit, at Λ=4 the mode occupies qubits (2m, 2m+1) with the occupation
//! number stored big-endian (|n⟩ = |b₀b₁⟩, n = 2b₀ + b₁). Fermions α = 1,2,3
//! sit on qubits 6,7,8 of the supersymmetric model.
//!
//! Sign convention (pinned by golden tests and the exact spectra): within the
//! cubic term the first-register bosonic coordinates enter as −x̂_{1α}. This
//! is a unitary change of frame (conjugation by Z⊗Z⊗Z on qubits 0–2) with
//! identical spectrum; it makes all twelve cubic coefficients land with the
//! published signs.

use crate::pauli::{Pauli, PauliError, PauliString, PauliSum, PRUNE_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Errors from model construction.
#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("unsupported Fock cutoff {0} (supported: 2, 4)")]
    BadCutoff(u32),
    #[error("coupling must be positive, got {0}")]
    BadLambda(f64),
    #[error("unknown model {0:?} (expected bosonic2, bosonic4, or susy2)")]
    BadModel(String),
    #[error("requested {requested} largest terms but only {available} non-identity terms exist")]
    TooManyTerms { requested: usize, available: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// The three supported models.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Bosonic2,
    Bosonic4,
    Susy2,
}

impl Model {
    pub fn n_qubits(self) -> usize {
        match self {
            Model::Bosonic2 => 6,
            Model::Bosonic4 => 12,
            Model::Susy2 => 9,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Model::Bosonic2 => "bosonic2",
            Model::Bosonic4 => "bosonic4",
            Model::Susy2 => "susy2",
        }
    }

    pub const ALL: [Model; 3] = [Model::Bosonic2, Model::Bosonic4, Model::Susy2];
}

impl std::str::FromStr for Model {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s {
            "bosonic2" => Ok(Model::Bosonic2),
            "bosonic4" => Ok(Model::Bosonic4),
            "susy2" => Ok(Model::Susy2),
            other => Err(ModelError::BadModel(other.to_string())),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// A model plus its coupling.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: Model,
    pub lambda: f64,
}

impl ModelSpec {
    pub fn new(model: Model, lambda: f64) -> Result<Self, ModelError> {
        if !(lambda > 0.0) {
            return Err(ModelError::BadLambda(lambda));
        }
        Ok(Self { model, lambda })
    }

    pub fn n_qubits(&self) -> usize {
        self.model.n_qubits()
    }

    /// g² = λ/N with N = 2.
    pub fn g_squared(&self) -> f64 {
        self.lambda / 2.0
    }
}

/// The four couplings studied throughout.
pub const COUPLINGS: [f64; 4] = [0.2, 0.5, 1.0, 2.0];

/// Build the Hamiltonian for a model spec.
pub fn build_hamiltonian(spec: &ModelSpec) -> Result<PauliSum, ModelError> {
    match spec.model {
        Model::Bosonic2 => build_bosonic(2, spec.lambda),
        Model::Bosonic4 => build_bosonic(4, spec.lambda),
        Model::Susy2 => build_susy(spec.lambda),
    }
}

/// Levi-Civita symbol for 1-based indices in {1,2,3}.
fn epsilon(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// Mode index of (I, α) with I ∈ {1,2}, α ∈ {1,2,3}.
fn mode_index(reg: usize, alpha: usize) -> usize {
    3 * (reg - 1) + (alpha - 1)
}

/// Qubits occupied by a mode at the given cutoff.
fn mode_qubits(cutoff: u32, mode: usize) -> Vec<usize> {
    match cutoff {
        2 => vec![mode],
        4 => vec![2 * mode, 2 * mode + 1],
        _ => unreachable!("cutoff validated by caller"),
    }
}

/// Embed a local sum (1 or 2 qubits) at the given qubit positions of an
/// n-qubit register (identity elsewhere).
fn embed(local: &PauliSum, at: &[usize], n_qubits: usize) -> PauliSum {
    let mut out = PauliSum::zero(n_qubits);
    for (labels, coeff) in local.label_vecs() {
        debug_assert_eq!(labels.len(), at.len());
        let mut full = vec![Pauli::I; n_qubits];
        for (&p, &q) in labels.iter().zip(at) {
            full[q] = p;
        }
        out.accumulate(full, coeff);
    }
    out
}

/// Local x̃ = â + â† for one truncated mode.
fn x_tilde_local(cutoff: u32) -> PauliSum {
    let one = Complex64::new(1.0, 0.0);
    match cutoff {
        2 => {
            // â = [[0,1],[0,0]] so â + â† = X.
            PauliSum::from_strings(1, [PauliString::parse("X", one).unwrap()], PRUNE_TOL).unwrap()
        }
        4 => {
            // â has superdiagonal (1, √2, √3); â + â† decomposes as below
            // (verified against the trace-inner-product oracle in tests).
            let s2 = 2.0f64.sqrt();
            let s3 = 3.0f64.sqrt();
            PauliSum::from_strings(
                2,
                [
                    PauliString::parse("IX", Complex64::new((1.0 + s3) / 2.0, 0.0)).unwrap(),
                    PauliString::parse("ZX", Complex64::new((1.0 - s3) / 2.0, 0.0)).unwrap(),
                    PauliString::parse("XX", Complex64::new(s2 / 2.0, 0.0)).unwrap(),
                    PauliString::parse("YY", Complex64::new(s2 / 2.0, 0.0)).unwrap(),
                ],
                PRUNE_TOL,
            )
            .unwrap()
        }
        _ => unreachable!(),
    }
}

/// Local n̂ + ½ for one truncated mode.
fn number_plus_half_local(cutoff: u32) -> PauliSum {
    let one = Complex64::new(1.0, 0.0);
    match cutoff {
        2 => PauliSum::from_strings(
            1,
            [
                PauliString::parse("I", one).unwrap(),
                PauliString::parse("Z", Complex64::new(-0.5, 0.0)).unwrap(),
            ],
            PRUNE_TOL,
        )
        .unwrap(),
        4 => PauliSum::from_strings(
            2,
            [
                PauliString::parse("II", Complex64::new(2.0, 0.0)).unwrap(),
                PauliString::parse("ZI", Complex64::new(-1.0, 0.0)).unwrap(),
                PauliString::parse("IZ", Complex64::new(-0.5, 0.0)).unwrap(),
            ],
            PRUNE_TOL,
        )
        .unwrap(),
        _ => unreachable!(),
    }
}

/// Build the bosonic Hamiltonian at the given Fock cutoff and coupling.
///
/// Exactly 10 terms at Λ=2 and 895 terms at Λ=4; all coefficients real.
pub fn build_bosonic(cutoff: u32, lambda: f64) -> Result<PauliSum, ModelError> {
    if cutoff != 2 && cutoff != 4 {
        return Err(ModelError::BadCutoff(cutoff));
    }
    if !(lambda > 0.0) {
        return Err(ModelError::BadLambda(lambda));
    }
    let g2 = lambda / 2.0;
    let n_qubits = if cutoff == 2 { 6 } else { 12 };

    // Embedded per-mode operators.
    let x_local = x_tilde_local(cutoff);
    let n_local = number_plus_half_local(cutoff);
    let x_modes: Vec<PauliSum> = (0..6)
        .map(|m| embed(&x_local, &mode_qubits(cutoff, m), n_qubits))
        .collect();

    // Free part: m Σ (n̂ + ½) with m = 1.
    let mut h = PauliSum::zero(n_qubits);
    for m in 0..6 {
        h = h.add(&embed(&n_local, &mode_qubits(cutoff, m), n_qubits))?;
    }

    // Interaction: (g²/16) Σ_{γ,I,J} A², A = √2 Σ_{αβ} ε_{αβγ} x̃_{Iα} x̃_{Jβ}.
    // The I = J contributions cancel symbolically (commuting modes under the
    // antisymmetric ε), so only I ≠ J survives; both are expanded to let the
    // algebra prove it.
    let sqrt2 = Complex64::new(2.0f64.sqrt(), 0.0);
    for gamma in 1..=3 {
        for reg_i in 1..=2 {
            for reg_j in 1..=2 {
                let mut a = PauliSum::zero(n_qubits);
                for alpha in 1..=3 {
                    for beta in 1..=3 {
                        let eps = epsilon(alpha, beta, gamma);
                        if eps == 0.0 {
                            continue;
                        }
                        let prod = x_modes[mode_index(reg_i, alpha)]
                            .mul(&x_modes[mode_index(reg_j, beta)])?;
                        a = a.add(&prod.scale(sqrt2 * Complex64::new(eps, 0.0)))?;
                    }
                }
                let a_sq = a.mul(&a)?;
                h = h.add(&a_sq.scale(Complex64::new(g2 / 16.0, 0.0)))?;
            }
        }
    }

    h.prune(PRUNE_TOL);
    h.chop(1e-12);
    h.require_hermitian(1e-10)?;
    Ok(h)
}

/// Jordan–Wigner annihilation operator ζ_α (α ∈ {1,2,3}) on the 9-qubit
/// supersymmetric register: Z-chain over preceding fermion qubits, then
/// (X + iY)/2 at qubit 5 + α.
fn fermion_annihilation(alpha: usize) -> PauliSum {
    let n = 9;
    let mut labels_x = vec![Pauli::I; n];
    let mut labels_y = vec![Pauli::I; n];
    for k in 1..alpha {
        labels_x[5 + k] = Pauli::Z;
        labels_y[5 + k] = Pauli::Z;
    }
    labels_x[5 + alpha] = Pauli::X;
    labels_y[5 + alpha] = Pauli::Y;
    PauliSum::from_strings(
        n,
        [
            PauliString::new(labels_x, Complex64::new(0.5, 0.0)),
            PauliString::new(labels_y, Complex64::new(0.0, 0.5)),
        ],
        PRUNE_TOL,
    )
    .unwrap()
}

/// Adjoint of a Pauli sum (conjugate coefficients; Pauli strings are
/// self-adjoint).
fn adjoint(s: &PauliSum) -> PauliSum {
    let mut out = PauliSum::zero(s.n_qubits());
    for (labels, coeff) in s.label_vecs() {
        out.accumulate(labels.to_vec(), coeff.conj());
    }
    out
}

/// Single Pauli X at one qubit of an n-qubit register.
fn x_at(qubit: usize, n_qubits: usize) -> PauliSum {
    let mut labels = vec![Pauli::I; n_qubits];
    labels[qubit] = Pauli::X;
    PauliSum::from_strings(
        n_qubits,
        [PauliString::new(labels, Complex64::new(1.0, 0.0))],
        PRUNE_TOL,
    )
    .unwrap()
}

/// Build the supersymmetric Hamiltonian at coupling λ (μ = 1).
///
/// Nine qubits (six bosonic modes at Λ=2 on qubits 0–5, three Jordan–Wigner
/// fermions on qubits 6–8), exactly 25 terms, all coefficients real.
pub fn build_susy(lambda: f64) -> Result<PauliSum, ModelError> {
    if !(lambda > 0.0) {
        return Err(ModelError::BadLambda(lambda));
    }
    let n = 9;
    let g2 = lambda / 2.0;
    let g = g2.sqrt();
    let one = Complex64::new(1.0, 0.0);

    let mut h = PauliSum::zero(n);

    // Bosonic free part: Σ_modes (n̂ + ½) = Σ (I − Z/2), modes on qubits 0–5.
    let n_local = number_plus_half_local(2);
    for q in 0..6 {
        h = h.add(&embed(&n_local, &[q], n))?;
    }

    // Fermion mass term: (3μ/2) Σ_α ζ†_α ζ_α with ζ†ζ = (I − Z)/2 at qubit 5+α.
    for alpha in 1..=3 {
        let zeta = fermion_annihilation(alpha);
        let num = adjoint(&zeta).mul(&zeta)?;
        h = h.add(&num.scale(Complex64::new(1.5, 0.0)))?;
    }

    // Constant −3μ.
    h = h.add(&PauliSum::from_strings(
        n,
        [PauliString::identity(n, Complex64::new(-3.0, 0.0))],
        PRUNE_TOL,
    )?)?;

    // Bosonic coordinates: x̂_{Iα} = X/√2 at qubit 3(I−1)+(α−1).
    let inv_sqrt2 = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
    let x_op = |reg: usize, alpha: usize| x_at(mode_index(reg, alpha), n).scale(inv_sqrt2);

    // Quartic interaction, part 1: g² Σ_{α≠β} x̂²_{1α} x̂²_{2β}.
    for alpha in 1..=3 {
        for beta in 1..=3 {
            if alpha == beta {
                continue;
            }
            let x1 = x_op(1, alpha);
            let x2 = x_op(2, beta);
            let term = x1.mul(&x1)?.mul(&x2.mul(&x2)?)?;
            h = h.add(&term.scale(Complex64::new(g2, 0.0)))?;
        }
    }

    // Quartic interaction, part 2: −2g² Σ_{α<β} x̂_{1α} x̂_{1β} x̂_{2α} x̂_{2β}.
    for alpha in 1..=3 {
        for beta in (alpha + 1)..=3 {
            let term = x_op(1, alpha)
                .mul(&x_op(1, beta))?
                .mul(&x_op(2, alpha))?
                .mul(&x_op(2, beta))?;
            h = h.add(&term.scale(Complex64::new(-2.0 * g2, 0.0)))?;
        }
    }

    // Cubic boson–fermion coupling:
    //   (ig/√2) Σ_{αβγ} ε_{αβγ} [ −(x̂_{1α} + i x̂_{2α}) ζ†_β ζ†_γ
    //                             + (−x̂_{1α} + i x̂_{2α}) ζ_β ζ_γ ]
    // with the pinned frame x̂_{1α} → −x̂_{1α} (see module docs).
    let zetas: Vec<PauliSum> = (1..=3).map(fermion_annihilation).collect();
    let ig_over_sqrt2 = Complex64::new(0.0, g / 2.0f64.sqrt());
    for alpha in 1..=3 {
        for beta in 1..=3 {
            for gamma in 1..=3 {
                let eps = epsilon(alpha, beta, gamma);
                if eps == 0.0 {
                    continue;
                }
                let x1 = x_op(1, alpha).scale(Complex64::new(-1.0, 0.0));
                let x2 = x_op(2, alpha);
                let zdag_pair = adjoint(&zetas[beta - 1]).mul(&adjoint(&zetas[gamma - 1]))?;
                let z_pair = zetas[beta - 1].mul(&zetas[gamma - 1])?;
                // −(x̂₁ + i x̂₂) ζ†ζ†
                let raise = x1
                    .add(&x2.scale(Complex64::new(0.0, 1.0)))?
                    .scale(-one)
                    .mul(&zdag_pair)?;
                // (−x̂₁ + i x̂₂) ζζ
                let lower = x1
                    .scale(-one)
                    .add(&x2.scale(Complex64::new(0.0, 1.0)))?
                    .mul(&z_pair)?;
                let term = raise.add(&lower)?;
                h = h.add(&term.scale(ig_over_sqrt2 * Complex64::new(eps, 0.0)))?;
            }
        }
    }

    h.prune(PRUNE_TOL);
    h.chop(1e-12);
    h.require_hermitian(1e-10)?;
    Ok(h)
}

/// The n non-identity terms with largest |coefficient|, ties broken by
/// ascending lexicographic label order. Deterministic.
pub fn largest_terms(h: &PauliSum, n: usize) -> Result<Vec<PauliString>, ModelError> {
    let mut terms: Vec<PauliString> = h.terms().filter(|t| !t.is_identity()).collect();
    if n > terms.len() {
        return Err(ModelError::TooManyTerms { requested: n, available: terms.len() });
    }
    terms.sort_by(|a, b| {
        b.coeff
            .norm()
            .partial_cmp(&a.coeff.norm())
            .unwrap()
            .then_with(|| a.labels.cmp(&b.labels))
    });
    terms.truncate(n);
    Ok(terms)
}

/// Independent dense constructions of the 6- and 9-qubit Hamiltonians from
/// explicit Kronecker products of the defining matrices — no Pauli algebra
/// involved. These are the oracles the symbolic builders are checked against.
pub mod oracle {
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn eye(dim: usize) -> DMatrix<Complex64> {
        DMatrix::from_diagonal_element(dim, dim, c(1.0, 0.0))
    }

    /// Kronecker-embed `op` at slot `slot` of `n_slots` equal-dimension slots.
    fn kron_embed(op: &DMatrix<Complex64>, slot: usize, n_slots: usize, dim: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(1, 1, c(1.0, 0.0));
        for s in 0..n_slots {
            m = if s == slot { m.kronecker(op) } else { m.kronecker(&eye(dim)) };
        }
        m
    }

    /// Truncated annihilation operator: superdiagonal (√1, …, √(Λ−1)).
    fn annihilation(cutoff: usize) -> DMatrix<Complex64> {
        let mut a = DMatrix::from_element(cutoff, cutoff, c(0.0, 0.0));
        for k in 1..cutoff {
            a[(k - 1, k)] = c((k as f64).sqrt(), 0.0);
        }
        a
    }

    /// Dense 64×64 bosonic Λ=2 Hamiltonian built directly from the defining
    /// matrices (m = 1, g² = λ/2, f = √2 ε).
    pub fn dense_bosonic2(lambda: f64) -> DMatrix<Complex64> {
        let g2 = lambda / 2.0;
        let a = annihilation(2);
        let x = &a + a.adjoint();
        let num = a.adjoint() * &a;
        let dim = 64;
        let mode = |reg: usize, alpha: usize| 3 * (reg - 1) + (alpha - 1);

        let mut h = DMatrix::from_element(dim, dim, c(0.0, 0.0));
        for m in 0..6 {
            let n_half = &num + eye(2) * c(0.5, 0.0);
            h += kron_embed(&n_half, m, 6, 2);
        }
        let xs: Vec<DMatrix<Complex64>> = (0..6).map(|m| kron_embed(&x, m, 6, 2)).collect();
        for gamma in 1..=3usize {
            for reg_i in 1..=2usize {
                for reg_j in 1..=2usize {
                    let mut amat = DMatrix::from_element(dim, dim, c(0.0, 0.0));
                    for alpha in 1..=3usize {
                        for beta in 1..=3usize {
                            let eps = super::epsilon(alpha, beta, gamma);
                            if eps == 0.0 {
                                continue;
                            }
                            amat += (&xs[mode(reg_i, alpha)] * &xs[mode(reg_j, beta)])
                                * c(eps * 2.0f64.sqrt(), 0.0);
                        }
                    }
                    h += (&amat * &amat) * c(g2 / 16.0, 0.0);
                }
            }
        }
        h
    }

    /// Dense 512×512 supersymmetric Hamiltonian built directly from the
    /// defining matrices (μ = 1, g² = λ/2), using the same −x̂_{1α} cubic
    /// frame as the symbolic builder.
    pub fn dense_susy(lambda: f64) -> DMatrix<Complex64> {
        let g2 = lambda / 2.0;
        let g = g2.sqrt();
        let dim = 512;
        let mode = |reg: usize, alpha: usize| 3 * (reg - 1) + (alpha - 1);

        // Bosonic slot operators on the 64-dim bosonic factor, embedded into 512.
        let a2 = annihilation(2);
        let xhat2 = (&a2 + a2.adjoint()) * c(1.0 / 2.0f64.sqrt(), 0.0);
        let num2 = a2.adjoint() * &a2;
        let embed_b = |op: &DMatrix<Complex64>, slot: usize| -> DMatrix<Complex64> {
            kron_embed(op, slot, 6, 2).kronecker(&eye(8))
        };

        // Fermion operators on the 8-dim fermionic factor, embedded into 512.
        let bmat = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let zmat = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let zeta = |alpha: usize| -> DMatrix<Complex64> {
            let mut m = DMatrix::from_element(1, 1, c(1.0, 0.0));
            for k in 1..=3 {
                m = if k < alpha {
                    m.kronecker(&zmat)
                } else if k == alpha {
                    m.kronecker(&bmat)
                } else {
                    m.kronecker(&eye(2))
                };
            }
            eye(64).kronecker(&m)
        };

        let mut h = DMatrix::from_element(dim, dim, c(0.0, 0.0));

        // Σ (n̂ + ½) over bosonic modes.
        for m in 0..6 {
            let n_half = &num2 + eye(2) * c(0.5, 0.0);
            h += embed_b(&n_half, m);
        }
        // (3/2) Σ ζ†ζ − 3.
        for alpha in 1..=3 {
            let z = zeta(alpha);
            h += (z.adjoint() * &z) * c(1.5, 0.0);
        }
        h += eye(dim) * c(-3.0, 0.0);

        let xops: Vec<DMatrix<Complex64>> = (0..6).map(|m| embed_b(&xhat2, m)).collect();
        // g² Σ_{α≠β} x̂²_{1α} x̂²_{2β}.
        for alpha in 1..=3usize {
            for beta in 1..=3usize {
                if alpha == beta {
                    continue;
                }
                let x1 = &xops[mode(1, alpha)];
                let x2 = &xops[mode(2, beta)];
                h += (x1 * x1 * x2 * x2) * c(g2, 0.0);
            }
        }
        // −2g² Σ_{α<β} x̂_{1α} x̂_{1β} x̂_{2α} x̂_{2β}.
        for alpha in 1..=3usize {
            for beta in (alpha + 1)..=3usize {
                h += (&xops[mode(1, alpha)]
                    * &xops[mode(1, beta)]
                    * &xops[mode(2, alpha)]
                    * &xops[mode(2, beta)])
                    * c(-2.0 * g2, 0.0);
            }
        }
        // Cubic term with the −x̂_{1α} frame.
        for alpha in 1..=3usize {
            for beta in 1..=3usize {
                for gamma in 1..=3usize {
                    let eps = super::epsilon(alpha, beta, gamma);
                    if eps == 0.0 {
                        continue;
                    }
                    let x1 = &xops[mode(1, alpha)] * c(-1.0, 0.0);
                    let ix2 = &xops[mode(2, alpha)] * c(0.0, 1.0);
                    let zb = zeta(beta);
                    let zg = zeta(gamma);
                    let zdag_pair = zb.adjoint() * zg.adjoint();
                    let z_pair = &zb * &zg;
                    let term = (&x1 + &ix2) * c(-1.0, 0.0) * &zdag_pair
                        + (&x1 * c(-1.0, 0.0) + &ix2) * &z_pair;
                    h += term * c(0.0, g / 2.0f64.sqrt()) * c(eps, 0.0);
                }
            }
        }
        h
    }
}
