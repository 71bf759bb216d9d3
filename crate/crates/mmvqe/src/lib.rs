//! Matrix-model VQE toolkit.
//!
//! This crate compiles truncated SU(2) matrix-model Hamiltonians (bosonic at
//! Fock cutoffs Λ = 2 and 4, and the minimal supersymmetric model) into
//! qubit Pauli-string sums, computes exact ground-state energies with a
//! matrix-free Lanczos solver, and runs a full variational-quantum-eigensolver
//! pipeline: hardware-efficient and Hamiltonian-evolution ansätze, an exact or
//! shot-sampled Pauli-term estimator, and four classical optimizers (SPSA,
//! COBYLA, Nelder–Mead, ADAM with finite-difference gradients).
//!
//! Everything is deterministic given a master seed: all randomness flows
//! through counter-keyed SplitMix64 streams.
//!
//! Module map:
//! * [`pauli`] — Pauli-string algebra and the sparse-sum container.
//! * [`models`] — Hamiltonian builders plus dense Kronecker oracles.
//! * [`spectra`] — matrix-free application and ground-energy solvers.
//! * [`ansatz`] — parameterized circuits and the per-model ansatz catalog.
//! * [`sim`] — statevector simulation and expectation estimators.
//! * [`optim`] — the four classical optimizers behind one interface.
//! * [`vqe`] — experiment driver: single runs, replicas, and sweeps.
//! * [`rng`] — seeded SplitMix64 streams.

pub mod ansatz;
pub mod catalog;
pub mod models;
pub mod optim;
pub mod pauli;
pub mod rng;
pub mod sim;
pub mod spectra;
pub mod vqe;

pub use models::{build_hamiltonian, Model, ModelSpec, COUPLINGS};
pub use pauli::{Pauli, PauliString, PauliSum};
