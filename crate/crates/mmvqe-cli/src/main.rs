//! Command-line interface for building matrix-model Hamiltonians, solving
//! their exact ground energies, and running VQE experiments over the ansatz
//! catalog.
//!
//! Settings resolve in three layers: built-in defaults, then the `--config`
//! TOML file (one section per subcommand), then command-line flags.
//!
//! Exit codes: 0 success; 1 runtime failure (I/O, solver, partial sweep
//! failure); 2 usage error (unknown names, bad values, bad config file).

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use mmvqe::ansatz::{AnsatzSpec, Family};
use mmvqe::catalog;
use mmvqe::models::{build_hamiltonian, Model, ModelSpec, COUPLINGS};
use mmvqe::optim::{OptimizerConfig, OptimizerKind};
use mmvqe::sim::{EstimatorConfig, EstimatorMode};
use mmvqe::spectra;
use mmvqe::vqe::{self, ExperimentSpec};
use serde_json::json;
use std::path::{Path, PathBuf};

use config::{resolve, FileConfig, OptimOverrides};

#[derive(Debug)]
enum CliError {
    /// Bad invocation: unknown names, invalid values, bad config file. Exit 2.
    Usage(String),
    /// Failure while doing the work: I/O, solver, partial sweep. Exit 1.
    Runtime(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn runtime(msg: impl std::fmt::Display) -> CliError {
    CliError::Runtime(msg.to_string())
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(format!("{e:#}"))
    }
}

#[derive(Parser)]
#[command(
    name = "mmvqe",
    version = output::VERSION,
    about = "Matrix-model Hamiltonians, exact ground energies, and VQE experiments",
    propagate_version = true
)]
struct Cli {
    /// TOML config file supplying defaults for any subcommand
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Print machine-readable JSON summaries on stdout where applicable
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print or write a model Hamiltonian as Pauli terms
    Hamiltonian(HamiltonianArgs),
    /// Compute the exact ground-state energy
    Exact(ExactArgs),
    /// Run one VQE experiment (several independent replicas)
    Vqe(VqeArgs),
    /// Run VQE over a model's coupling x ansatz x optimizer matrix
    Sweep(SweepArgs),
    /// Describe a model's ansatz catalog
    AnsatzInfo(AnsatzInfoArgs),
}

#[derive(Args)]
struct HamiltonianArgs {
    /// Model id: bosonic2, bosonic4, or susy2
    #[arg(long)]
    model: Option<String>,
    /// 't Hooft coupling lambda (> 0)
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Write to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    /// Model id: bosonic2, bosonic4, or susy2
    #[arg(long)]
    model: Option<String>,
    /// 't Hooft coupling lambda (> 0)
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Seed for the iterative eigensolver's start vector
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON result to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VqeArgs {
    /// Model id: bosonic2, bosonic4, or susy2
    #[arg(long)]
    model: Option<String>,
    /// 't Hooft coupling lambda (> 0)
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Ansatz name from the model's catalog (see `mmvqe ansatz-info`)
    #[arg(long)]
    ansatz: Option<String>,
    /// Optimizer: spsa, cobyla, nelder-mead, or adam
    #[arg(long)]
    optimizer: Option<String>,
    /// Shots per energy evaluation (default 1024)
    #[arg(long)]
    shots: Option<u64>,
    /// Master seed; replicas derive independent streams from it (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Number of independent replicas (default 5)
    #[arg(long)]
    replicas: Option<usize>,
    /// Output directory (default: MMVQE_OUT_DIR or ./mmvqe-out)
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Evaluate energies exactly instead of by sampling
    #[arg(long)]
    exact_expectation: bool,
    /// Optimizer evaluation budget override
    #[arg(long)]
    max_iterations: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Model id: bosonic2, bosonic4, or susy2
    #[arg(long)]
    model: Option<String>,
    /// Comma-separated couplings (default 0.2,0.5,1.0,2.0; empty for none)
    #[arg(long, value_name = "LIST")]
    couplings: Option<String>,
    /// Comma-separated optimizers (default cobyla,spsa)
    #[arg(long, value_name = "LIST")]
    optimizers: Option<String>,
    /// Shots per energy evaluation (default 1024)
    #[arg(long)]
    shots: Option<u64>,
    /// Master seed; every cell derives an independent stream (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Replicas per experiment cell (default 1)
    #[arg(long)]
    replicas: Option<usize>,
    /// Output directory (default: MMVQE_OUT_DIR or ./mmvqe-out)
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Worker threads; 0 means all cores (default 0)
    #[arg(long)]
    parallelism: Option<usize>,
    /// Evaluate energies exactly instead of by sampling
    #[arg(long)]
    exact_expectation: bool,
    /// Optimizer evaluation budget override (applies to every cell)
    #[arg(long)]
    max_iterations: Option<usize>,
}

#[derive(Args)]
struct AnsatzInfoArgs {
    /// Model id: bosonic2, bosonic4, or susy2
    #[arg(long)]
    model: Option<String>,
    /// Coupling used to select the catalog variant list (default 1.0)
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Describe just this ansatz
    #[arg(long)]
    ansatz: Option<String>,
}

fn main() {
    // Restore default SIGPIPE behavior so `mmvqe ... | head` ends quietly
    // instead of panicking on the first print after the pipe closes.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(CliError::Usage)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Hamiltonian(args) => cmd_hamiltonian(args, file),
        Command::Exact(args) => cmd_exact(args, file),
        Command::Vqe(args) => cmd_vqe(args, file, cli.json),
        Command::Sweep(args) => cmd_sweep(args, file, cli.json),
        Command::AnsatzInfo(args) => cmd_ansatz_info(args, file, cli.json),
    }
}

// ---------------------------------------------------------------- helpers

fn required<T>(flag: Option<T>, file: Option<T>, what: &str) -> Result<T, CliError> {
    config::resolve_required(flag, file, what).map_err(CliError::Usage)
}

fn parse_model(s: &str) -> Result<Model, CliError> {
    s.parse::<Model>().map_err(|_| {
        usage(format!(
            "unknown model `{s}` (valid models: {})",
            Model::ALL.map(|m| m.id()).join(", ")
        ))
    })
}

fn parse_optimizer(s: &str) -> Result<OptimizerKind, CliError> {
    s.parse::<OptimizerKind>().map_err(|_| {
        usage(format!(
            "unknown optimizer `{s}` (valid optimizers: {})",
            OptimizerKind::ALL.map(|k| k.id()).join(", ")
        ))
    })
}

fn find_ansatz(spec: &ModelSpec, name: &str) -> Result<AnsatzSpec, CliError> {
    catalog::find(spec, name).map_err(|_| {
        usage(format!(
            "unknown ansatz `{name}` for model {} (valid ansatze: {})",
            spec.model.id(),
            catalog::names(spec).join(", ")
        ))
    })
}

fn model_spec(model: Model, lambda: f64) -> Result<ModelSpec, CliError> {
    ModelSpec::new(model, lambda).map_err(|e| usage(e.to_string()))
}

/// Bool resolution: a set flag wins; otherwise the file value; otherwise false.
fn resolve_flag(flag: bool, file: Option<bool>) -> bool {
    resolve(if flag { Some(true) } else { None }, file, false)
}

fn resolve_out_dir(flag: Option<PathBuf>, file: Option<String>) -> PathBuf {
    flag.or(file.map(PathBuf::from))
        .or_else(|| std::env::var_os("MMVQE_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("mmvqe-out"))
}

fn write_or_print(out: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(&path, text.as_bytes())
            .map_err(|e| runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| runtime(format!("cannot create directory {}: {e}", dir.display())))
}

fn family_id(family: Family) -> &'static str {
    match family {
        Family::EfficientSu2 => "efficient-su2",
        Family::TwoLocal => "two-local",
        Family::EvolvedOperator => "evolved-operator",
    }
}

// ------------------------------------------------------------- hamiltonian

fn cmd_hamiltonian(args: HamiltonianArgs, file: FileConfig) -> Result<(), CliError> {
    let sec = file.hamiltonian.unwrap_or_default();
    let model = parse_model(&required(args.model, sec.model, "model")?)?;
    let lambda = required(args.lambda, sec.lambda, "lambda")?;
    let spec = model_spec(model, lambda)?;
    let h = build_hamiltonian(&spec).map_err(runtime)?;
    write_or_print(args.out.or(sec.out.map(PathBuf::from)), &h.render())
}

// ------------------------------------------------------------------- exact

fn cmd_exact(args: ExactArgs, file: FileConfig) -> Result<(), CliError> {
    let sec = file.exact.unwrap_or_default();
    let model = parse_model(&required(args.model, sec.model, "model")?)?;
    let lambda = required(args.lambda, sec.lambda, "lambda")?;
    let seed = resolve(args.seed, sec.seed, 0);
    let spec = model_spec(model, lambda)?;

    let h = build_hamiltonian(&spec).map_err(runtime)?;
    let ground = spectra::ground_energy(&h, seed).map_err(runtime)?;

    let artifact = json!({
        "version": output::VERSION,
        "command": "exact",
        "effective_config": { "model": model.id(), "lambda": lambda, "seed": seed },
        "energy": ground.energy,
        "iterations": ground.iterations,
        "seed": ground.seed,
    });
    let mut text = serde_json::to_string_pretty(&artifact).map_err(runtime)?;
    text.push('\n');
    write_or_print(args.out.or(sec.out.map(PathBuf::from)), &text)
}

// --------------------------------------------------------------------- vqe

fn cmd_vqe(args: VqeArgs, file: FileConfig, json_out: bool) -> Result<(), CliError> {
    let sec = file.vqe.unwrap_or_default();
    let model = parse_model(&required(args.model, sec.model, "model")?)?;
    let lambda = required(args.lambda, sec.lambda, "lambda")?;
    let mspec = model_spec(model, lambda)?;
    let ansatz = find_ansatz(&mspec, &required(args.ansatz, sec.ansatz, "ansatz")?)?;
    let kind = parse_optimizer(&required(args.optimizer, sec.optimizer, "optimizer")?)?;

    let shots = resolve(args.shots, sec.shots, 1024);
    let seed = resolve(args.seed, sec.seed, 0);
    let replicas = resolve(args.replicas, sec.replicas, 5);
    let exact_expectation = resolve_flag(args.exact_expectation, sec.exact_expectation);
    if replicas == 0 {
        return Err(usage("--replicas must be at least 1"));
    }
    if !exact_expectation && shots == 0 {
        return Err(usage("--shots must be at least 1 (or pass --exact-expectation)"));
    }

    let overrides = OptimOverrides::merged(&sec.optim, args.max_iterations);
    let mut optimizer = OptimizerConfig::new(kind, seed);
    overrides.apply(&mut optimizer);
    if optimizer.max_iterations == 0 {
        return Err(usage("max_iterations must be at least 1"));
    }

    let estimator = EstimatorConfig {
        mode: if exact_expectation { EstimatorMode::Exact } else { EstimatorMode::Sampled },
        shots,
        seed,
    };
    let spec = ExperimentSpec {
        model: mspec,
        ansatz: ansatz.clone(),
        optimizer,
        estimator,
        replicas,
        theta0: None,
    };

    let out_dir = resolve_out_dir(args.out_dir, sec.out_dir);
    create_dir(&out_dir)?;

    let results = vqe::run_replicas(&spec).map_err(runtime)?;

    let effective_config = json!({
        "model": model.id(),
        "lambda": lambda,
        "ansatz": ansatz.name,
        "optimizer": kind.id(),
        "shots": shots,
        "seed": seed,
        "replicas": replicas,
        "out_dir": out_dir.display().to_string(),
        "exact_expectation": exact_expectation,
        "max_iterations": spec.optimizer.max_iterations,
    });

    let mut files = Vec::new();
    for (i, result) in results.iter().enumerate() {
        let stem = format!("vqe_{}", output::replica_stem(result, i));
        files.push(output::write_result_json(&out_dir, &stem, "vqe", &effective_config, result)?);
        files.push(output::write_convergence_csv(
            &out_dir,
            &stem,
            "vqe",
            &effective_config,
            result,
        )?);
    }

    let best = vqe::best_of(&results).expect("at least one replica ran");
    if json_out {
        let summary = json!({
            "version": output::VERSION,
            "command": "vqe",
            "effective_config": effective_config,
            "exact_energy": best.exact_energy,
            "best_vqe_energy": best.vqe_energy,
            "best_gap": best.gap,
            "best_seed": best.seed,
            "replicas": results.len(),
            "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&summary).map_err(runtime)?);
    } else {
        println!(
            "vqe {} lambda={} {} {}: best {:.6} exact {:.6} gap {:.3e} ({} replicas, best seed {})",
            model.id(),
            lambda,
            ansatz.name,
            kind.id(),
            best.vqe_energy,
            best.exact_energy,
            best.gap,
            results.len(),
            best.seed,
        );
        println!("wrote {} files to {}", files.len(), out_dir.display());
    }
    Ok(())
}

// ------------------------------------------------------------------- sweep

fn parse_couplings_list(s: &str) -> Result<Vec<f64>, CliError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|piece| {
            let piece = piece.trim();
            let value: f64 = piece
                .parse()
                .map_err(|_| usage(format!("invalid coupling `{piece}` in --couplings")))?;
            validate_coupling(value)
        })
        .collect()
}

fn validate_coupling(value: f64) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(usage(format!("couplings must be positive finite numbers, got {value}")))
    }
}

fn parse_optimizers_list<'a>(
    names: impl Iterator<Item = &'a str>,
) -> Result<Vec<OptimizerKind>, CliError> {
    let kinds: Vec<OptimizerKind> =
        names.map(|n| parse_optimizer(n.trim())).collect::<Result<_, _>>()?;
    if kinds.is_empty() {
        return Err(usage("at least one optimizer is required"));
    }
    Ok(kinds)
}

fn cmd_sweep(args: SweepArgs, file: FileConfig, json_out: bool) -> Result<(), CliError> {
    let sec = file.sweep.unwrap_or_default();
    let model = parse_model(&required(args.model, sec.model, "model")?)?;

    let couplings: Vec<f64> = match (args.couplings, sec.couplings) {
        (Some(flag), _) => parse_couplings_list(&flag)?,
        (None, Some(file_list)) => {
            file_list.into_iter().map(validate_coupling).collect::<Result<_, _>>()?
        }
        (None, None) => COUPLINGS.to_vec(),
    };
    let optimizers: Vec<OptimizerKind> = match (args.optimizers, sec.optimizers) {
        (Some(flag), _) => parse_optimizers_list(flag.split(','))?,
        (None, Some(file_list)) => parse_optimizers_list(file_list.iter().map(String::as_str))?,
        (None, None) => vec![OptimizerKind::Cobyla, OptimizerKind::Spsa],
    };

    let shots = resolve(args.shots, sec.shots, 1024);
    let seed = resolve(args.seed, sec.seed, 0);
    let replicas = resolve(args.replicas, sec.replicas, 1);
    let parallelism = resolve(args.parallelism, sec.parallelism, 0);
    let exact_expectation = resolve_flag(args.exact_expectation, sec.exact_expectation);
    if replicas == 0 {
        return Err(usage("--replicas must be at least 1"));
    }
    if !exact_expectation && shots == 0 {
        return Err(usage("--shots must be at least 1 (or pass --exact-expectation)"));
    }
    let overrides = OptimOverrides::merged(&sec.optim, args.max_iterations);
    if overrides.max_iterations == Some(0) {
        return Err(usage("max_iterations must be at least 1"));
    }

    let estimator = EstimatorConfig {
        mode: if exact_expectation { EstimatorMode::Exact } else { EstimatorMode::Sampled },
        shots,
        seed,
    };
    let mut specs = vqe::catalog_specs(model, &couplings, &optimizers, estimator, replicas, seed)
        .map_err(runtime)?;
    for spec in &mut specs {
        overrides.apply(&mut spec.optimizer);
    }

    let out_dir = resolve_out_dir(args.out_dir, sec.out_dir);
    let runs_dir = out_dir.join("runs");
    create_dir(&runs_dir)?;

    let effective_config = json!({
        "model": model.id(),
        "couplings": couplings,
        "optimizers": optimizers.iter().map(|k| k.id()).collect::<Vec<_>>(),
        "shots": shots,
        "seed": seed,
        "replicas": replicas,
        "out_dir": out_dir.display().to_string(),
        "exact_expectation": exact_expectation,
        "parallelism": parallelism,
        "max_iterations": overrides.max_iterations,
    });

    let outcome = vqe::run_sweep(&specs, parallelism);

    for result in &outcome.results {
        let stem = output::seed_stem(result);
        output::write_result_json(&runs_dir, &stem, "sweep", &effective_config, result)?;
        output::write_convergence_csv(&runs_dir, &stem, "sweep", &effective_config, result)?;
    }
    let aggregate =
        output::write_aggregate_csv(&out_dir, "sweep", seed, &effective_config, &outcome.results)?;
    let rows = vqe::best_per_cell(&outcome.results);
    let summary = output::write_summary_csv(&out_dir, "sweep", seed, &effective_config, &rows)?;
    let failures_path = if outcome.failures.is_empty() {
        None
    } else {
        Some(output::write_failures_json(
            &out_dir,
            "sweep",
            seed,
            &effective_config,
            &outcome.failures,
        )?)
    };

    let total = outcome.results.len() + outcome.failures.len();
    if json_out {
        let report = json!({
            "version": output::VERSION,
            "command": "sweep",
            "effective_config": effective_config,
            "runs": total,
            "ok": outcome.results.len(),
            "failed": outcome.failures.len(),
            "cells": rows.len(),
            "aggregate_csv": aggregate.display().to_string(),
            "summary_csv": summary.display().to_string(),
            "failures_json": failures_path.as_ref().map(|p| p.display().to_string()),
        });
        println!("{}", serde_json::to_string_pretty(&report).map_err(runtime)?);
    } else {
        println!(
            "sweep {}: {} runs ({} ok, {} failed), {} cells -> {}",
            model.id(),
            total,
            outcome.results.len(),
            outcome.failures.len(),
            rows.len(),
            out_dir.display(),
        );
    }

    match failures_path {
        Some(path) => Err(CliError::Runtime(format!(
            "{} of {total} runs failed; details in {}",
            outcome.failures.len(),
            path.display(),
        ))),
        None => Ok(()),
    }
}

// ------------------------------------------------------------- ansatz-info

fn cmd_ansatz_info(args: AnsatzInfoArgs, file: FileConfig, json_out: bool) -> Result<(), CliError> {
    let sec = file.ansatz_info.unwrap_or_default();
    let model = parse_model(&required(args.model, sec.model, "model")?)?;
    let lambda = resolve(args.lambda, sec.lambda, 1.0);
    let mspec = model_spec(model, lambda)?;

    let specs: Vec<AnsatzSpec> = match args.ansatz.or(sec.ansatz) {
        Some(name) => vec![find_ansatz(&mspec, &name)?],
        None => catalog::catalog(&mspec),
    };

    let mut rows = Vec::new();
    for spec in &specs {
        let circuit = spec.build(mspec.n_qubits()).map_err(runtime)?;
        rows.push((spec, circuit.n_params(), circuit.gate_counts()));
    }

    if json_out {
        let entries: Vec<serde_json::Value> = rows
            .iter()
            .map(|(spec, n_params, counts)| {
                let gates: serde_json::Map<String, serde_json::Value> = counts
                    .iter()
                    .map(|(gate, count)| (gate.to_string(), json!(count)))
                    .collect();
                json!({
                    "name": spec.name,
                    "family": family_id(spec.family),
                    "rotation": spec.rotation.map(|r| r.token()),
                    "entanglement": spec.entanglement.map(|e| e.token()),
                    "depth": spec.depth,
                    "n_params": n_params,
                    "gates": gates,
                    "operators": spec.operators,
                })
            })
            .collect();
        let report = json!({
            "version": output::VERSION,
            "command": "ansatz-info",
            "effective_config": { "model": model.id(), "lambda": lambda },
            "n_qubits": mspec.n_qubits(),
            "ansatze": entries,
        });
        println!("{}", serde_json::to_string_pretty(&report).map_err(runtime)?);
    } else {
        println!(
            "{} ({} qubits, lambda={}): {} ansatze",
            model.id(),
            mspec.n_qubits(),
            lambda,
            rows.len(),
        );
        println!("{:<24} {:<18} {:>5} {:>8}  gates", "name", "family", "depth", "params");
        for (spec, n_params, counts) in &rows {
            let gates: Vec<String> =
                counts.iter().map(|(gate, count)| format!("{gate}:{count}")).collect();
            println!(
                "{:<24} {:<18} {:>5} {:>8}  {}",
                spec.name,
                family_id(spec.family),
                spec.depth,
                n_params,
                gates.join(" "),
            );
        }
    }
    Ok(())
}
