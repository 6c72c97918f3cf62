//! Harness integration: files in, deterministic reports out.

use std::fs;

use mbr_core::harness::{
    load_instances, run_experiment, AlgorithmSpec, ExperimentConfig, HarnessError, OracleChoice,
    Report,
};
use mbr_core::{planted_batch, Instance};

fn write_jsonl(dir: &std::path::Path, instances: &[Instance]) -> std::path::PathBuf {
    let path = dir.join("instances.jsonl");
    let lines: Vec<String> = instances
        .iter()
        .map(|i| serde_json::to_string(i).unwrap())
        .collect();
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    path
}

fn planted_pool(count: usize) -> Vec<Instance> {
    planted_batch(16, count, 0.08, 0.25, 0.5, 5)
        .into_iter()
        .map(|(instance, _)| instance)
        .collect()
}

#[test]
fn end_to_end_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_jsonl(dir.path(), &planted_pool(6));
    let output_a = dir.path().join("a.csv");
    let output_b = dir.path().join("b.csv");

    let mut config = ExperimentConfig {
        algorithms: vec![
            AlgorithmSpec::Ambr,
            AlgorithmSpec::Nbys,
            AlgorithmSpec::Cbp(Default::default()),
        ],
        budget_fractions: vec![0.125, 0.5],
        seeds: vec![0, 1, 2],
        utility: OracleChoice::Matrix,
        coarse_utility: None,
        input: input.clone(),
        output: output_a.clone(),
    };
    run_experiment(&config).unwrap();
    config.output = output_b.clone();
    run_experiment(&config).unwrap();

    let a = fs::read(&output_a).unwrap();
    let b = fs::read(&output_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn report_rows_respect_fraction_budgets() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_jsonl(dir.path(), &planted_pool(5));
    let output = dir.path().join("out.csv");
    let config = ExperimentConfig {
        algorithms: vec![AlgorithmSpec::Ambr, AlgorithmSpec::AmbrReplace],
        budget_fractions: vec![0.03125, 0.25],
        seeds: vec![0, 1],
        utility: OracleChoice::Matrix,
        coarse_utility: None,
        input,
        output: output.clone(),
    };
    let report = run_experiment(&config).unwrap();
    assert_eq!(report.rows.len(), 2 * 2 * 2);
    for row in &report.rows {
        let cap = (row.fraction * (16.0 * 15.0)).floor();
        assert!(row.mean_evals <= cap + 1e-9);
        assert!(row.max_evals as f64 <= cap);
        assert!((0.0..=1.0).contains(&row.error_rate));
        assert!(row.mean_regret >= 0.0);
    }

    // The emitted CSV parses back to the same rows and aggregates.
    let parsed = Report::from_csv_reader(fs::File::open(&output).unwrap()).unwrap();
    assert_eq!(parsed.rows, report.rows);
    assert_eq!(parsed.aggregates, report.aggregates);
}

#[test]
fn json_output_is_selected_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_jsonl(dir.path(), &planted_pool(3));
    let output = dir.path().join("out.json");
    let config = ExperimentConfig {
        algorithms: vec![AlgorithmSpec::Exact],
        budget_fractions: vec![1.0],
        seeds: vec![0],
        utility: OracleChoice::Matrix,
        coarse_utility: None,
        input,
        output: output.clone(),
    };
    let report = run_experiment(&config).unwrap();
    let parsed = Report::from_json_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(parsed, report);
    assert!(report.rows.iter().all(|r| r.error_rate == 0.0));
}

#[test]
fn missing_input_file_is_an_io_error() {
    let config = ExperimentConfig {
        algorithms: vec![AlgorithmSpec::Ambr],
        budget_fractions: vec![0.5],
        seeds: vec![0],
        utility: OracleChoice::Matrix,
        coarse_utility: None,
        input: "/nonexistent/path.jsonl".into(),
        output: "/tmp/unused.csv".into(),
    };
    match run_experiment(&config) {
        Err(e @ HarnessError::Io(_)) => assert_eq!(e.exit_code(), 2),
        other => panic!("expected io error, got {other:?}"),
    }
}

#[test]
fn loader_rejects_bad_lines_with_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    fs::write(
        &path,
        "{\"id\":\"ok\",\"candidates\":[\"a\"]}\n{\"id\":\"bad\",\"candidates\":[\"a\"],\"rewards\":[1.0,2.0]}\n",
    )
    .unwrap();
    match load_instances(&path) {
        Err(e @ HarnessError::Schema { line: 2, .. }) => assert_eq!(e.exit_code(), 1),
        other => panic!("expected schema error at line 2, got {other:?}"),
    }
}

#[test]
fn embedding_instances_flow_through_vector_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let mut instances = Vec::new();
    let mut rng = mbr_core::RngStream::new(8);
    for k in 0..4 {
        let embeddings: Vec<Vec<f64>> = (0..10)
            .map(|_| (0..8).map(|_| rng.symmetric(1.0) + 0.1).collect())
            .collect();
        instances.push(
            Instance::new(format!("emb-{k}"), (0..10).map(|i| format!("h{i}")).collect())
                .with_embeddings(embeddings),
        );
    }
    let input = write_jsonl(dir.path(), &instances);
    let output = dir.path().join("out.csv");
    let config = ExperimentConfig {
        algorithms: vec![AlgorithmSpec::Aggregation, AlgorithmSpec::Ambr],
        budget_fractions: vec![1.0],
        seeds: vec![0],
        utility: OracleChoice::Cosine,
        coarse_utility: None,
        input,
        output,
    };
    let report = run_experiment(&config).unwrap();
    let aggregation_row = report
        .rows
        .iter()
        .find(|r| r.algorithm == "aggregation")
        .unwrap();
    // Aggregation agrees with the exact cosine choice on every instance.
    assert_eq!(aggregation_row.error_rate, 0.0);
}

#[test]
fn fuzz_corpus_seeds_replay_cleanly() {
    // Mirrors the fuzz-target bodies over the checked-in seed corpus so the
    // seeds stay in sync with the parsers under plain `cargo test`.
    let corpus = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus");

    for entry in fs::read_dir(corpus.join("parse_instances")).unwrap() {
        let bytes = fs::read(entry.unwrap().path()).unwrap();
        if let Ok(instances) = mbr_core::harness::read_instances(&bytes[..]) {
            for instance in &instances {
                instance.validate().unwrap();
                let line = serde_json::to_string(instance).unwrap();
                assert_eq!(serde_json::from_str::<Instance>(&line).unwrap(), *instance);
            }
        }
    }
    for entry in fs::read_dir(corpus.join("parse_config")).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        if let Ok(config) = ExperimentConfig::from_json_str(&text) {
            config.validate().unwrap();
        }
    }
    for entry in fs::read_dir(corpus.join("parse_report_csv")).unwrap() {
        let bytes = fs::read(entry.unwrap().path()).unwrap();
        if let Ok(report) = Report::from_csv_reader(&bytes[..]) {
            let csv = report.to_csv_string().unwrap();
            let back = Report::from_csv_reader(csv.as_bytes()).unwrap();
            assert_eq!(back.rows.len(), report.rows.len());
        }
    }
    for entry in fs::read_dir(corpus.join("parse_report_json")).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        if let Ok(report) = Report::from_json_str(&text) {
            report.to_csv_string().unwrap();
            report.to_json_string().unwrap();
        }
    }
}
