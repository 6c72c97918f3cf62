//! Subcommand behavior: flags, formats, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mbr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbr"))
        .args(args)
        .output()
        .unwrap()
}

fn write_example_instance(dir: &Path) -> std::path::PathBuf {
    // The three-candidate replay pool with means (0.85, 0.65, 0.6).
    let path = dir.join("example.jsonl");
    fs::write(
        &path,
        concat!(
            r#"{"id":"ex","candidates":["alpha","beta","gamma"],"#,
            r#""utility_matrix":[[0,0.9,0.8],[0.9,0,0.4],[0.8,0.4,0]]}"#,
            "\n"
        ),
    )
    .unwrap();
    path
}

#[test]
fn decode_exact_picks_the_hand_computed_winner() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example_instance(dir.path());
    let out = mbr(&["decode", "--input", input.to_str().unwrap(), "--algorithm", "exact"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<&str> = stdout.trim().split('\t').collect();
    assert_eq!(fields, vec!["ex", "0", "alpha", "6"]);
}

#[test]
fn decode_with_unit_budget_stays_within_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.jsonl");
    fs::write(
        &path,
        r#"{"id":"t","candidates":["x","y"],"utility_matrix":[[0,0.4],[0.9,0]]}"#,
    )
    .unwrap();
    let out = mbr(&[
        "decode",
        "--input",
        path.to_str().unwrap(),
        "--algorithm",
        "ambr",
        "--budget",
        "1",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<&str> = stdout.trim().split('\t').collect();
    let chosen: usize = fields[1].parse().unwrap();
    let evals: usize = fields[3].parse().unwrap();
    assert!(chosen < 2);
    assert!(evals <= 1);
}

#[test]
fn decode_doubling_reports_convergence_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example_instance(dir.path());
    let out = mbr(&[
        "decode",
        "--input",
        input.to_str().unwrap(),
        "--algorithm",
        "doubling",
        "--budget",
        "8",
        "--cap",
        "1024",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let flag = stdout.trim().split('\t').last().unwrap();
    assert!(flag == "converged" || flag == "unconverged", "got {flag}");
}

#[test]
fn decode_rejects_conflicting_budget_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example_instance(dir.path());
    let out = mbr(&[
        "decode",
        "--input",
        input.to_str().unwrap(),
        "--algorithm",
        "ambr",
        "--budget",
        "4",
        "--fraction",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn synth_writes_instances_and_labels_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("synth.jsonl");
    let args = [
        "synth", "--n", "6", "--count", "3", "--gap", "1.0", "--noise", "0.0", "--seed", "5",
        "--output",
    ];
    let out = mbr(&[&args[..], &[output.to_str().unwrap()]].concat());
    assert!(out.status.success());

    let body = fs::read_to_string(&output).unwrap();
    assert_eq!(body.lines().count(), 3);
    let labels: std::collections::BTreeMap<String, usize> = serde_json::from_str(
        &fs::read_to_string(dir.path().join("synth.jsonl.labels.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(labels.len(), 3);

    // Noiseless planted instances: every label equals its planted index,
    // recoverable as the row whose off-diagonal entries are all maximal.
    for (line, (_, label)) in body.lines().zip(&labels) {
        let instance: serde_json::Value = serde_json::from_str(line).unwrap();
        let matrix = instance["utility_matrix"].as_array().unwrap();
        let planted = (0..6)
            .max_by(|&a, &b| {
                let row = |i: usize| -> f64 {
                    matrix[i].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).sum()
                };
                row(a).partial_cmp(&row(b)).unwrap()
            })
            .unwrap();
        assert_eq!(*label, planted);
    }

    // Regenerating with the same flags writes identical bytes.
    let second = dir.path().join("synth2.jsonl");
    let out2 = mbr(&[&args[..], &[second.to_str().unwrap()]].concat());
    assert!(out2.status.success());
    assert_eq!(fs::read(&output).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn run_accepts_a_config_file_and_prints_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example_instance(dir.path());
    let output = dir.path().join("report.csv");
    let config_path = dir.path().join("config.json");
    fs::write(
        &config_path,
        format!(
            r#"{{
                "algorithms": ["exact", {{"name": "cbp", "r0": 1, "alpha": 0.9, "B": 50}}],
                "budget_fractions": [1.0],
                "seeds": [0, 1],
                "utility": "matrix",
                "input": {:?},
                "output": {:?}
            }}"#,
            input.to_str().unwrap(),
            output.to_str().unwrap()
        ),
    )
    .unwrap();
    let out = mbr(&["run", "--config", config_path.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("exact f=1 error=0.0000"));
    assert!(stdout.contains("cbp f=1"));
    // Header + 2 algorithms x 1 fraction x 2 seeds + 2 aggregates.
    assert_eq!(fs::read_to_string(&output).unwrap().lines().count(), 7);
}

#[test]
fn run_rejects_config_mixed_with_inline_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("c.json");
    fs::write(&config_path, "{}").unwrap();
    let out = mbr(&[
        "run",
        "--config",
        config_path.to_str().unwrap(),
        "--algorithms",
        "ambr",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn report_converts_between_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example_instance(dir.path());
    let csv_path = dir.path().join("report.csv");
    let out = mbr(&[
        "run",
        "--algorithms",
        "ambr,nbys",
        "--fractions",
        "0.5,1.0",
        "--seeds",
        "0,1,2",
        "--utility",
        "matrix",
        "--input",
        input.to_str().unwrap(),
        "--output",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let json_path = dir.path().join("report.json");
    let to_json = mbr(&[
        "report",
        "--input",
        csv_path.to_str().unwrap(),
        "--output",
        json_path.to_str().unwrap(),
    ]);
    assert!(to_json.status.success());

    let back_path = dir.path().join("back.csv");
    let to_csv = mbr(&[
        "report",
        "--input",
        json_path.to_str().unwrap(),
        "--output",
        back_path.to_str().unwrap(),
    ]);
    assert!(to_csv.status.success());
    assert_eq!(fs::read(&csv_path).unwrap(), fs::read(&back_path).unwrap());
}

#[test]
fn exit_codes_follow_the_interface_contract() {
    // Missing required value context: config/schema errors exit 1.
    let out = mbr(&["run", "--algorithms", "ambr", "--utility", "matrix"]);
    assert_eq!(out.status.code(), Some(1), "missing input");

    let dir = tempfile::tempdir().unwrap();
    let input = write_example_instance(dir.path());
    let out = mbr(&[
        "run",
        "--algorithms",
        "ambr",
        "--fractions",
        "0",
        "--utility",
        "matrix",
        "--input",
        input.to_str().unwrap(),
        "--output",
        dir.path().join("x.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "zero fraction");

    let out = mbr(&[
        "decode",
        "--input",
        input.to_str().unwrap(),
        "--algorithm",
        "bogus",
    ]);
    assert_eq!(out.status.code(), Some(1), "unknown algorithm");

    let out = mbr(&["decode", "--input", "/nonexistent.jsonl", "--algorithm", "exact"]);
    assert_eq!(out.status.code(), Some(2), "unreadable input");

    let out = mbr(&["decode", "--input", input.to_str().unwrap(), "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1), "unknown flag rejected");

    let out = mbr(&["--help"]);
    assert_eq!(out.status.code(), Some(0), "help exits cleanly");
}
