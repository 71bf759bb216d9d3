//! VQE experiment orchestration.
//!
//! One experiment binds a Hamiltonian, an ansatz circuit, an estimator, and a
//! classical optimizer into a single objective θ ↦ ⟨ψ(θ)|H|ψ(θ)⟩ and
//! minimizes it. The driver also computes the exact ground energy for the
//! reported gap, enforces the variational sanity bound, and runs batched
//! sweeps over the experiment catalog with per-spec seed streams.
//!
//! Seeding: a replica's seed drives three disjoint streams — the initial
//! point θ₀ ~ U[0, 2π)ⁿ, the SPSA perturbations, and the per-evaluation
//! estimator shots. Replica seeds derive from the spec seed, and sweep spec
//! seeds derive from the sweep master seed, so any single result can be
//! reproduced bit-for-bit from its own metadata (wall_time excluded).

use crate::ansatz::{AnsatzError, AnsatzSpec};
use crate::catalog;
use crate::models::{build_hamiltonian, Model, ModelError, ModelSpec};
use crate::optim::{self, OptimError, OptimizerConfig, OptimizerKind};
use crate::pauli::PauliSum;
use crate::rng::stream_seed;
use crate::sim::{simulate, EstimatorConfig, EstimatorMode, PreparedEstimator, SimError};
use crate::spectra::{self, SpectraError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::time::Instant;

/// Stream tag for replica seeds derived from a spec seed.
const STREAM_REPLICA: u64 = 0xA11CE;
/// Stream tag for spec seeds derived from a sweep master seed.
const STREAM_SWEEP: u64 = 0x53ED5;
/// Fixed start-vector seed for the exact ground-energy solve.
const EXACT_SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum VqeError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Ansatz(#[from] AnsatzError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Optim(#[from] OptimError),
    #[error("replicas must be ≥ 1")]
    BadReplicas,
    #[error("θ₀ override has {got} entries but the circuit has {want} parameters")]
    Theta0Length { got: usize, want: usize },
    #[error("objective became non-finite at evaluation {eval}: {detail}")]
    NonFinite { eval: usize, detail: String },
    #[error(
        "energy {vqe_energy} violates the variational bound: exact {exact_energy} − tolerance {tolerance}"
    )]
    VariationalViolation { vqe_energy: f64, exact_energy: f64, tolerance: f64 },
}

/// Everything that defines one VQE experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub model: ModelSpec,
    pub ansatz: AnsatzSpec,
    pub optimizer: OptimizerConfig,
    pub estimator: EstimatorConfig,
    /// Independent seeds per spec; best-of is reported by the callers.
    pub replicas: usize,
    /// Fixed initial point override; absent → θ₀ ~ U[0, 2π)ⁿ from the seed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theta0: Option<Vec<f64>>,
}

/// Outcome of one experiment replica.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VqeResult {
    /// Echo of the spec actually run (with this replica's derived seeds),
    /// sufficient to reproduce the result bit-for-bit.
    pub spec: ExperimentSpec,
    pub exact_energy: f64,
    /// Best (lowest) energy evaluation seen anywhere in the run.
    pub vqe_energy: f64,
    /// vqe_energy − exact_energy.
    pub gap: f64,
    pub theta_best: Vec<f64>,
    /// (evaluation index, θ hash, energy) for every objective call.
    pub history: Vec<(usize, u64, f64)>,
    pub evaluations: usize,
    /// Seconds; informational only — excluded from determinism guarantees.
    pub wall_time: f64,
    /// The replica seed all random streams derive from.
    pub seed: u64,
}

/// Run one replica against a prebuilt Hamiltonian and exact energy.
///
/// `spec.optimizer.seed` and `spec.estimator.seed` are used exactly as given
/// (use [`run_replicas`] for derived per-replica seeds).
pub fn run_vqe_with_exact(
    spec: &ExperimentSpec,
    h: &PauliSum,
    exact_energy: f64,
) -> Result<VqeResult, VqeError> {
    let start = Instant::now();
    let n_qubits = spec.model.model.n_qubits();
    let circuit = spec.ansatz.build(n_qubits)?;

    let theta0 = match &spec.theta0 {
        Some(t) => {
            if t.len() != circuit.n_params() {
                return Err(VqeError::Theta0Length { got: t.len(), want: circuit.n_params() });
            }
            t.clone()
        }
        None => optim::random_theta0(circuit.n_params(), spec.optimizer.seed),
    };

    // Precompile the operator once for the whole run.
    let compiled = spectra::compile(h)?;
    let prepared = match spec.estimator.mode {
        EstimatorMode::Sampled => Some(PreparedEstimator::new(h)?),
        EstimatorMode::Exact => None,
    };
    let shots = spec.estimator.shots;
    let est_seed = spec.estimator.seed;

    let mut eval_index: u64 = 0;
    let mut failure: Option<VqeError> = None;
    let mut objective = |theta: &[f64]| -> f64 {
        if failure.is_some() {
            return f64::NAN;
        }
        let this_eval = eval_index;
        eval_index += 1;
        if !theta.iter().all(|t| t.is_finite()) {
            failure = Some(VqeError::NonFinite {
                eval: this_eval as usize,
                detail: "non-finite parameter vector".to_string(),
            });
            return f64::NAN;
        }
        let result = simulate(&circuit, theta).and_then(|v| match &prepared {
            Some(p) => p.estimate(&v, shots, est_seed, this_eval),
            None => crate::sim::expectation_exact_compiled(&v, &compiled),
        });
        match result {
            Ok(e) if e.is_finite() => e,
            Ok(e) => {
                failure = Some(VqeError::NonFinite {
                    eval: this_eval as usize,
                    detail: format!("energy estimate {e}"),
                });
                f64::NAN
            }
            Err(err) => {
                failure = Some(VqeError::Sim(err));
                f64::NAN
            }
        }
    };

    let run = optim::minimize(&mut objective, &theta0, &spec.optimizer)?;
    if let Some(err) = failure {
        return Err(err);
    }

    // Variational sanity: sampling noise can dip below the exact ground
    // energy, but never beyond the analytic shot-noise band.
    let tolerance = match spec.estimator.mode {
        EstimatorMode::Sampled => 3.0 * h.coeff_l1_norm() / (shots as f64).sqrt(),
        EstimatorMode::Exact => 1e-9,
    };
    if run.best_value < exact_energy - tolerance {
        return Err(VqeError::VariationalViolation {
            vqe_energy: run.best_value,
            exact_energy,
            tolerance,
        });
    }

    Ok(VqeResult {
        spec: spec.clone(),
        exact_energy,
        vqe_energy: run.best_value,
        gap: run.best_value - exact_energy,
        theta_best: run.best_theta,
        history: run.history,
        evaluations: run.evaluations,
        wall_time: start.elapsed().as_secs_f64(),
        seed: spec.optimizer.seed,
    })
}

/// Run one replica end to end (builds the Hamiltonian and solves for the
/// exact ground energy first).
pub fn run_vqe(spec: &ExperimentSpec) -> Result<VqeResult, VqeError> {
    let h = build_hamiltonian(&spec.model)?;
    let exact = spectra::ground_energy(&h, EXACT_SEED)?.energy;
    run_vqe_with_exact(spec, &h, exact)
}

/// The spec as it should be run for replica `r`: optimizer and estimator
/// seeds both derived from the spec seed and the replica index.
pub fn replica_spec(spec: &ExperimentSpec, replica: usize) -> ExperimentSpec {
    let seed = stream_seed(spec.optimizer.seed, STREAM_REPLICA, replica as u64);
    let mut out = spec.clone();
    out.optimizer.seed = seed;
    out.estimator.seed = seed;
    out
}

/// Run all replicas of a spec sequentially, sharing one Hamiltonian build
/// and exact solve. Results are in replica order.
pub fn run_replicas(spec: &ExperimentSpec) -> Result<Vec<VqeResult>, VqeError> {
    if spec.replicas == 0 {
        return Err(VqeError::BadReplicas);
    }
    let h = build_hamiltonian(&spec.model)?;
    let exact = spectra::ground_energy(&h, EXACT_SEED)?.energy;
    (0..spec.replicas)
        .map(|r| run_vqe_with_exact(&replica_spec(spec, r), &h, exact))
        .collect()
}

/// The replica with the lowest energy.
pub fn best_of(results: &[VqeResult]) -> Option<&VqeResult> {
    results
        .iter()
        .min_by(|a, b| a.vqe_energy.partial_cmp(&b.vqe_energy).unwrap_or(std::cmp::Ordering::Equal))
}

/// Expand a model's whole ansatz catalog into the experiment matrix
/// (coupling × ansatz × optimizer), with per-spec seeds derived from the
/// master seed so every cell runs an independent stream.
pub fn catalog_specs(
    model: Model,
    couplings: &[f64],
    optimizers: &[OptimizerKind],
    estimator: EstimatorConfig,
    replicas: usize,
    master_seed: u64,
) -> Result<Vec<ExperimentSpec>, VqeError> {
    if replicas == 0 {
        return Err(VqeError::BadReplicas);
    }
    let mut specs = Vec::new();
    let mut index = 0u64;
    for &lambda in couplings {
        let model_spec = ModelSpec::new(model, lambda)?;
        for ansatz in catalog::catalog(&model_spec) {
            for &kind in optimizers {
                let seed = stream_seed(master_seed, STREAM_SWEEP, index);
                index += 1;
                let mut est = estimator;
                est.seed = seed;
                specs.push(ExperimentSpec {
                    model: model_spec,
                    ansatz: ansatz.clone(),
                    optimizer: OptimizerConfig::new(kind, seed),
                    estimator: est,
                    replicas,
                    theta0: None,
                });
            }
        }
    }
    Ok(specs)
}

/// One failed (spec, replica) cell of a sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepFailure {
    pub spec_index: usize,
    pub replica: usize,
    pub model: String,
    pub lambda: f64,
    pub ansatz: String,
    pub optimizer: String,
    pub error: String,
}

/// All results and failures of a sweep, in deterministic task order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub results: Vec<VqeResult>,
    pub failures: Vec<SweepFailure>,
}

/// Run every (spec, replica) cell, `parallelism` at a time (0 → all cores).
/// Individual failures are recorded and the sweep continues; with no
/// failures the result count is Σ spec.replicas.
pub fn run_sweep(specs: &[ExperimentSpec], parallelism: usize) -> SweepOutcome {
    // The exact ground energies are shared across every replica and
    // optimizer of the same (model, λ); solve each one once, up front.
    let mut exact: HashMap<(String, u64), Result<f64, String>> = HashMap::new();
    for spec in specs {
        let key = (spec.model.model.id().to_string(), spec.model.lambda.to_bits());
        exact.entry(key).or_insert_with(|| {
            build_hamiltonian(&spec.model)
                .map_err(|e| e.to_string())
                .and_then(|h| {
                    spectra::ground_energy(&h, EXACT_SEED)
                        .map(|g| g.energy)
                        .map_err(|e| e.to_string())
                })
        });
    }

    let tasks: Vec<(usize, usize)> = specs
        .iter()
        .enumerate()
        .flat_map(|(i, s)| (0..s.replicas.max(1)).map(move |r| (i, r)))
        .collect();

    let run_task = |&(i, r): &(usize, usize)| -> Result<VqeResult, SweepFailure> {
        let spec = &specs[i];
        let fail = |msg: String| SweepFailure {
            spec_index: i,
            replica: r,
            model: spec.model.model.id().to_string(),
            lambda: spec.model.lambda,
            ansatz: spec.ansatz.name.clone(),
            optimizer: spec.optimizer.kind.id().to_string(),
            error: msg,
        };
        let key = (spec.model.model.id().to_string(), spec.model.lambda.to_bits());
        let exact_energy = match &exact[&key] {
            Ok(e) => *e,
            Err(msg) => return Err(fail(msg.clone())),
        };
        let h = build_hamiltonian(&spec.model).map_err(|e| fail(e.to_string()))?;
        run_vqe_with_exact(&replica_spec(spec, r), &h, exact_energy)
            .map_err(|e| fail(e.to_string()))
    };

    let outcomes: Vec<Result<VqeResult, SweepFailure>> = if parallelism == 1 {
        tasks.iter().map(run_task).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism) // 0 → rayon default (all cores)
            .build()
            .expect("worker pool construction cannot fail with these settings");
        pool.install(|| tasks.par_iter().map(run_task).collect())
    };

    let mut results = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(f) => failures.push(f),
        }
    }
    SweepOutcome { results, failures }
}

/// Best result per (model, λ, ansatz, optimizer) cell.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummaryRow {
    pub model: String,
    pub lambda: f64,
    pub ansatz: String,
    pub optimizer: String,
    pub exact_energy: f64,
    pub best_vqe_energy: f64,
    pub best_gap: f64,
    pub best_seed: u64,
    pub replicas: usize,
}

/// Collapse sweep results to the best replica per experiment cell, sorted by
/// (model, λ, ansatz, optimizer).
pub fn best_per_cell(results: &[VqeResult]) -> Vec<SummaryRow> {
    let mut cells: HashMap<(String, u64, String, String), SummaryRow> = HashMap::new();
    for r in results {
        let key = (
            r.spec.model.model.id().to_string(),
            r.spec.model.lambda.to_bits(),
            r.spec.ansatz.name.clone(),
            r.spec.optimizer.kind.id().to_string(),
        );
        match cells.get_mut(&key) {
            None => {
                cells.insert(
                    key,
                    SummaryRow {
                        model: r.spec.model.model.id().to_string(),
                        lambda: r.spec.model.lambda,
                        ansatz: r.spec.ansatz.name.clone(),
                        optimizer: r.spec.optimizer.kind.id().to_string(),
                        exact_energy: r.exact_energy,
                        best_vqe_energy: r.vqe_energy,
                        best_gap: r.gap,
                        best_seed: r.seed,
                        replicas: 1,
                    },
                );
            }
            Some(row) => {
                row.replicas += 1;
                if r.vqe_energy < row.best_vqe_energy {
                    row.best_vqe_energy = r.vqe_energy;
                    row.best_gap = r.gap;
                    row.best_seed = r.seed;
                }
            }
        }
    }
    let mut rows: Vec<SummaryRow> = cells.into_values().collect();
    rows.sort_by(|a, b| {
        (&a.model, a.lambda.to_bits(), &a.ansatz, &a.optimizer).cmp(&(
            &b.model,
            b.lambda.to_bits(),
            &b.ansatz,
            &b.optimizer,
        ))
    });
    rows
}
