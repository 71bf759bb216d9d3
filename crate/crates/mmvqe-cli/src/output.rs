//! Artifact writers. Every file carries the artifact version, the effective
//! configuration it was produced under, and the governing seed — JSON files
//! as top-level fields, CSV files as a single leading `#` comment line
//! (skip it with any comment-aware reader; the header row follows).

use anyhow::{Context, Result};
use mmvqe::vqe::{SummaryRow, SweepFailure, VqeResult};
use serde::Serialize;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Artifact version: package version plus the source revision.
pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+", env!("MMVQE_GIT_REV"));

#[derive(Serialize)]
struct ResultArtifact<'a> {
    version: &'a str,
    command: &'a str,
    effective_config: &'a serde_json::Value,
    result: &'a VqeResult,
}

/// C-locale-ish short float for file names: 0.2 → "0.2".
pub fn lambda_tag(lambda: f64) -> String {
    format!("{lambda}")
}

/// File-name stem for one experiment replica.
pub fn replica_stem(result: &VqeResult, replica: usize) -> String {
    format!(
        "{}_l{}_{}_{}_r{}",
        result.spec.model.model.id(),
        lambda_tag(result.spec.model.lambda),
        result.spec.ansatz.name,
        result.spec.optimizer.kind.id(),
        replica
    )
}

/// File-name stem keyed by the replica's derived seed — used for sweep run
/// files, where the seed (not a positional index) identifies the replica.
pub fn seed_stem(result: &VqeResult) -> String {
    format!(
        "{}_l{}_{}_{}_s{}",
        result.spec.model.model.id(),
        lambda_tag(result.spec.model.lambda),
        result.spec.ansatz.name,
        result.spec.optimizer.kind.id(),
        result.seed
    )
}

/// Write one experiment result as JSON; returns the path.
pub fn write_result_json(
    dir: &Path,
    stem: &str,
    command: &str,
    effective_config: &serde_json::Value,
    result: &VqeResult,
) -> Result<PathBuf> {
    let path = dir.join(format!("{stem}.json"));
    let artifact = ResultArtifact { version: VERSION, command, effective_config, result };
    let mut text = serde_json::to_string_pretty(&artifact)?;
    text.push('\n');
    std::fs::write(&path, text.as_bytes())
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn csv_preamble(
    path: &Path,
    command: &str,
    seed: u64,
    effective_config: &serde_json::Value,
) -> Result<File> {
    let mut file =
        File::create(path).with_context(|| format!("creating {}", path.display()))?;
    writeln!(
        file,
        "# mmvqe {VERSION} command={command} seed={seed} config={}",
        serde_json::to_string(effective_config)?
    )?;
    Ok(file)
}

/// Per-experiment convergence curve: one row per objective evaluation.
pub fn write_convergence_csv(
    dir: &Path,
    stem: &str,
    command: &str,
    effective_config: &serde_json::Value,
    result: &VqeResult,
) -> Result<PathBuf> {
    let path = dir.join(format!("{stem}_convergence.csv"));
    let file = csv_preamble(&path, command, result.seed, effective_config)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    w.write_record(["evaluation", "energy"])?;
    for (evaluation, _hash, energy) in &result.history {
        w.serialize((evaluation, energy))?;
    }
    w.flush()?;
    Ok(path)
}

#[derive(Serialize)]
struct AggregateRow<'a> {
    model: &'a str,
    lambda: f64,
    ansatz: &'a str,
    optimizer: &'a str,
    seed: u64,
    exact_energy: f64,
    vqe_energy: f64,
    gap: f64,
    evaluations: usize,
    wall_time: f64,
}

/// One aggregate row per replica result.
pub fn write_aggregate_csv(
    dir: &Path,
    command: &str,
    master_seed: u64,
    effective_config: &serde_json::Value,
    results: &[VqeResult],
) -> Result<PathBuf> {
    let path = dir.join("aggregate.csv");
    let file = csv_preamble(&path, command, master_seed, effective_config)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    w.write_record([
        "model",
        "lambda",
        "ansatz",
        "optimizer",
        "seed",
        "exact_energy",
        "vqe_energy",
        "gap",
        "evaluations",
        "wall_time",
    ])?;
    for r in results {
        w.serialize(AggregateRow {
            model: r.spec.model.model.id(),
            lambda: r.spec.model.lambda,
            ansatz: &r.spec.ansatz.name,
            optimizer: r.spec.optimizer.kind.id(),
            seed: r.seed,
            exact_energy: r.exact_energy,
            vqe_energy: r.vqe_energy,
            gap: r.gap,
            evaluations: r.evaluations,
            wall_time: r.wall_time,
        })?;
    }
    w.flush()?;
    Ok(path)
}

/// Best replica per (model, λ, ansatz, optimizer) cell.
pub fn write_summary_csv(
    dir: &Path,
    command: &str,
    master_seed: u64,
    effective_config: &serde_json::Value,
    rows: &[SummaryRow],
) -> Result<PathBuf> {
    let path = dir.join("summary.csv");
    let file = csv_preamble(&path, command, master_seed, effective_config)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    w.write_record([
        "model",
        "lambda",
        "ansatz",
        "optimizer",
        "exact_energy",
        "best_vqe_energy",
        "best_gap",
        "best_seed",
        "replicas",
    ])?;
    for row in rows {
        w.serialize((
            &row.model,
            row.lambda,
            &row.ansatz,
            &row.optimizer,
            row.exact_energy,
            row.best_vqe_energy,
            row.best_gap,
            row.best_seed,
            row.replicas,
        ))?;
    }
    w.flush()?;
    Ok(path)
}

#[derive(Serialize)]
struct FailureManifest<'a> {
    version: &'a str,
    command: &'a str,
    effective_config: &'a serde_json::Value,
    seed: u64,
    failures: &'a [SweepFailure],
}

/// Failure manifest for a partially failed sweep.
pub fn write_failures_json(
    dir: &Path,
    command: &str,
    master_seed: u64,
    effective_config: &serde_json::Value,
    failures: &[SweepFailure],
) -> Result<PathBuf> {
    let path = dir.join("failures.json");
    let manifest = FailureManifest {
        version: VERSION,
        command,
        effective_config,
        seed: master_seed,
        failures,
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(&path, text.as_bytes())
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
