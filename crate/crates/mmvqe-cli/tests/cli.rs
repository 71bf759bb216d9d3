//! End-to-end tests of the `mmvqe` binary: dumps, exit codes, config
//! precedence, artifact shapes, and cross-directory determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_mmvqe");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_str(&stdout_str(out)).expect("JSON stdout")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "exit code; stderr: {}",
        stderr_str(out)
    );
}

#[test]
fn hamiltonian_dump_counts_and_roundtrip() {
    // Term-line counts per model, stdout byte-stable across runs.
    for (model, lambda, terms) in
        [("bosonic2", "0.2", 10usize), ("susy2", "2.0", 25), ("bosonic4", "1.0", 895)]
    {
        let a = run(&["hamiltonian", "--model", model, "--lambda", lambda]);
        assert_exit(&a, 0);
        let text = stdout_str(&a);
        assert_eq!(
            text.lines().filter(|l| !l.trim().is_empty()).count(),
            terms,
            "{model} λ={lambda} term lines"
        );
        let b = run(&["hamiltonian", "--model", model, "--lambda", lambda]);
        assert_eq!(a.stdout, b.stdout, "{model} dump not byte-stable");
    }

    // --out writes exactly the stdout bytes.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.txt");
    let to_file = run(&[
        "hamiltonian", "--model", "bosonic2", "--lambda", "0.2",
        "--out", file.to_str().unwrap(),
    ]);
    assert_exit(&to_file, 0);
    let direct = run(&["hamiltonian", "--model", "bosonic2", "--lambda", "0.2"]);
    assert_eq!(fs::read(&file).unwrap(), direct.stdout);
}

#[test]
fn unknown_model_is_usage_error() {
    let out = run(&["hamiltonian", "--model", "bogus", "--lambda", "1.0"]);
    assert_exit(&out, 2);
    let err = stderr_str(&out);
    assert!(err.contains("bosonic2"), "stderr should list valid models: {err}");
}

#[test]
fn nonpositive_coupling_is_usage_error() {
    let out = run(&["hamiltonian", "--model", "bosonic2", "--lambda", "-1"]);
    assert_exit(&out, 2);
    assert!(stderr_str(&out).contains("positive"));
}

#[test]
fn exact_energy_json_fields() {
    let out = run(&["exact", "--model", "bosonic2", "--lambda", "0.5", "--json"]);
    assert_exit(&out, 0);
    let v = json_stdout(&out);
    assert_eq!(v["command"], "exact");
    assert!((v["energy"].as_f64().unwrap() - 3.36254).abs() < 1e-4);
    assert!(v["iterations"].as_u64().unwrap() > 0);
    assert!(v["version"].as_str().unwrap().contains('+'));
    assert_eq!(v["effective_config"]["model"], "bosonic2");
}

#[test]
fn vqe_artifacts_and_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.toml");
    fs::write(
        &config,
        r#"
[vqe]
model = "bosonic2"
lambda = 0.2
ansatz = "effsu2_Ry_c"
optimizer = "cobyla"
shots = 512
replicas = 2

[vqe.optim]
max_iterations = 50
"#,
    )
    .unwrap();
    let out_dir = dir.path().join("results");
    let out = run(&[
        "vqe",
        "--config", config.to_str().unwrap(),
        "--shots", "256",
        "--seed", "7",
        "--out-dir", out_dir.to_str().unwrap(),
        "--json",
    ]);
    assert_exit(&out, 0);
    let summary = json_stdout(&out);
    // Flag beats file; file beats default.
    assert_eq!(summary["effective_config"]["shots"], 256);
    assert_eq!(summary["effective_config"]["replicas"], 2);
    assert_eq!(summary["replicas"], 2);
    assert_eq!(summary["files"].as_array().unwrap().len(), 4, "JSON + CSV per replica");

    for r in 0..2 {
        let stem = format!("vqe_bosonic2_l0.2_effsu2_Ry_c_cobyla_r{r}");
        let json_path = out_dir.join(format!("{stem}.json"));
        let csv_path = out_dir.join(format!("{stem}_convergence.csv"));
        let artifact: Value =
            serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
        let evals = artifact["result"]["evaluations"].as_u64().unwrap();
        assert!(
            (1..=55).contains(&evals),
            "replica {r}: evaluation budget override not honored ({evals})"
        );
        let csv = fs::read_to_string(&csv_path).unwrap();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("# mmvqe "));
        assert_eq!(lines.next().unwrap(), "evaluation,energy");
        assert_eq!(lines.count() as u64, evals, "replica {r}: one CSV row per evaluation");
    }
}

#[test]
fn vqe_unknown_ansatz_lists_catalog() {
    let out = run(&[
        "vqe", "--model", "susy2", "--lambda", "1.0",
        "--ansatz", "bogus", "--optimizer", "spsa",
    ]);
    assert_exit(&out, 2);
    let err = stderr_str(&out);
    assert!(err.contains("ev_op_Hp20"), "stderr should list the catalog: {err}");
}

#[test]
fn vqe_determinism_across_working_dirs() {
    let args = [
        "vqe", "--model", "bosonic2", "--lambda", "0.2",
        "--ansatz", "ev_op_r", "--optimizer", "spsa",
        "--shots", "128", "--replicas", "1", "--seed", "3",
        "--max-iterations", "40", "--out-dir", "out",
    ];
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_exit(&run_in(a.path(), &args), 0);
    assert_exit(&run_in(b.path(), &args), 0);

    let stem = "vqe_bosonic2_l0.2_ev_op_r_spsa_r0";
    // Convergence data is byte-identical.
    let csv_a = fs::read(a.path().join("out").join(format!("{stem}_convergence.csv"))).unwrap();
    let csv_b = fs::read(b.path().join("out").join(format!("{stem}_convergence.csv"))).unwrap();
    assert_eq!(csv_a, csv_b, "convergence CSV differs across working directories");
    // JSON artifacts are identical except the informational wall_time.
    let mut ja: Value = serde_json::from_slice(
        &fs::read(a.path().join("out").join(format!("{stem}.json"))).unwrap(),
    )
    .unwrap();
    let mut jb: Value = serde_json::from_slice(
        &fs::read(b.path().join("out").join(format!("{stem}.json"))).unwrap(),
    )
    .unwrap();
    ja["result"].as_object_mut().unwrap().remove("wall_time");
    jb["result"].as_object_mut().unwrap().remove("wall_time");
    assert_eq!(ja, jb, "result artifact differs beyond wall_time");
}

#[test]
fn sweep_aggregate_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("sweep");
    let out = run(&[
        "sweep", "--model", "susy2", "--couplings", "0.2",
        "--shots", "128", "--max-iterations", "30", "--seed", "1",
        "--out-dir", out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);

    // 12 ansatz variants × 2 default optimizers × 1 coupling, 1 replica each.
    let aggregate = fs::read_to_string(out_dir.join("aggregate.csv")).unwrap();
    let mut lines = aggregate.lines();
    assert!(lines.next().unwrap().starts_with("# mmvqe "));
    assert_eq!(
        lines.next().unwrap(),
        "model,lambda,ansatz,optimizer,seed,exact_energy,vqe_energy,gap,evaluations,wall_time"
    );
    assert_eq!(lines.count(), 24, "aggregate rows");

    let summary = fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 2 + 24, "summary: comment + header + one row per cell");

    let runs: Vec<_> = fs::read_dir(out_dir.join("runs")).unwrap().collect();
    let json_count = runs
        .iter()
        .filter(|e| {
            e.as_ref().unwrap().path().extension().map(|x| x == "json").unwrap_or(false)
        })
        .count();
    assert_eq!(json_count, 24, "one JSON artifact per run");
    assert!(!out_dir.join("failures.json").exists(), "no failures expected");
}

#[test]
fn sweep_empty_couplings_writes_headers_only() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("sweep");
    let out = run(&[
        "sweep", "--model", "susy2", "--couplings", "",
        "--out-dir", out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let aggregate = fs::read_to_string(out_dir.join("aggregate.csv")).unwrap();
    assert_eq!(aggregate.lines().count(), 2, "comment + header only");
}

#[test]
fn exact_out_into_missing_dir_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("does-not-exist").join("x.json");
    let out = run(&[
        "exact", "--model", "bosonic2", "--lambda", "0.5",
        "--out", target.to_str().unwrap(),
    ]);
    assert_exit(&out, 1);
}

#[test]
fn ansatz_info_parameter_counts() {
    let one = run(&["ansatz-info", "--model", "susy2", "--ansatz", "ev_op_Hp20", "--json"]);
    assert_exit(&one, 0);
    let v = json_stdout(&one);
    let ansatze = v["ansatze"].as_array().unwrap();
    assert_eq!(ansatze.len(), 1);
    assert_eq!(ansatze[0]["n_params"], 20);
    assert_eq!(v["n_qubits"], 9);

    let all = run(&["ansatz-info", "--model", "bosonic2", "--json"]);
    assert_exit(&all, 0);
    let v = json_stdout(&all);
    assert_eq!(v["ansatze"].as_array().unwrap().len(), 25);
}

#[test]
fn config_unknown_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.toml");
    fs::write(&config, "[vqe]\nbogus_key = 1\n").unwrap();
    let out = run(&[
        "vqe", "--config", config.to_str().unwrap(),
        "--model", "bosonic2", "--lambda", "1.0",
        "--ansatz", "ev_op_r", "--optimizer", "spsa",
    ]);
    assert_exit(&out, 2);
    assert!(stderr_str(&out).contains("bogus_key"));
}

#[test]
fn version_embeds_build_metadata() {
    let out = run(&["--version"]);
    assert_exit(&out, 0);
    assert!(stdout_str(&out).trim().contains("0.1.0+"));
}
