//! End-to-end tests of the `chemspace` binary: every subcommand is driven
//! through its real argv/stdout/stderr/exit-code surface.

use std::io::Write as _;
use std::process::{Command, Output};

const TOY_REACTIONS: &str = "\
# toy chemical space over {A, B, C, D}
r1: A -> B
r2: A + C -> D
r3: B + C -> D
r4: B + C -> A + D
";

/// Runs the binary with a clean environment (no ambient seed override).
fn chemspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chemspace"))
        .args(args)
        .env_remove("CHEMSPACE_SEED")
        .output()
        .expect("binary should run")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn count_reports_exact_totals_in_text() {
    let text = stdout_of(&chemspace(&["count", "--n", "4"]));
    assert!(text.contains("total edges: 25"), "got:\n{text}");
    assert!(text.contains("impossible pairs: 171"), "got:\n{text}");
    assert!(text.contains("size 3: 12"), "got:\n{text}");

    let text = stdout_of(&chemspace(&["count", "--n", "2"]));
    assert!(text.contains("total edges: 1"), "got:\n{text}");
}

#[test]
fn count_block_table_sums_to_the_total() {
    let csv = stdout_of(&chemspace(&[
        "count", "--n", "10", "--blocks", "--format", "csv",
    ]));
    let mut block_sum: u64 = 0;
    let mut total: u64 = 0;
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        match fields[0] {
            "block" => block_sum += fields[2].parse::<u64>().unwrap(),
            "total_edges" => total = fields[2].parse().unwrap(),
            _ => {}
        }
    }
    assert_eq!(total, 28_501);
    assert_eq!(block_sum, total, "block counts must partition the total");
}

#[test]
fn count_json_keeps_counts_as_decimal_strings() {
    let text = stdout_of(&chemspace(&["count", "--n", "4", "--format", "json"]));
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(doc["total_edges"], "25");
    assert_eq!(doc["impossible_pairs"], "171");
    assert_eq!(doc["per_size"]["4"], "7");
}

#[test]
fn sample_hits_both_degenerate_probabilities() {
    let empty = stdout_of(&chemspace(&[
        "sample", "--n", "6", "--p", "0", "--count", "1",
    ]));
    assert!(empty.contains("edges=0"), "got:\n{empty}");

    let full = stdout_of(&chemspace(&[
        "sample", "--n", "6", "--p", "1", "--count", "1",
    ]));
    assert!(full.contains("edges=301"), "got:\n{full}");
}

#[test]
fn sample_is_reproducible_and_jobs_independent() {
    let args = [
        "sample", "--n", "6", "--p", "0.3", "--count", "4", "--seed", "42",
    ];
    let first = stdout_of(&chemspace(&args));
    let second = stdout_of(&chemspace(&args));
    assert_eq!(first, second, "same seed must reproduce the same summary");

    let threaded = stdout_of(&chemspace(&[
        "sample", "--n", "6", "--p", "0.3", "--count", "4", "--seed", "42", "--jobs", "4",
    ]));
    assert_eq!(first, threaded, "worker count must not change the output");

    let reseeded = stdout_of(&chemspace(&[
        "sample", "--n", "6", "--p", "0.3", "--count", "4", "--seed", "43",
    ]));
    assert_ne!(first, reseeded, "a different seed should change the draw");
}

#[test]
fn seed_environment_variable_matches_the_flag() {
    let flagged = stdout_of(&chemspace(&[
        "sample", "--n", "6", "--p", "0.3", "--seed", "7",
    ]));
    let out = Command::new(env!("CARGO_BIN_EXE_chemspace"))
        .args(["sample", "--n", "6", "--p", "0.3"])
        .env("CHEMSPACE_SEED", "7")
        .output()
        .expect("binary should run");
    assert_eq!(flagged, stdout_of(&out));
}

#[test]
fn sample_writes_one_document_per_replicate() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("draw.json");
    let summary = stdout_of(&chemspace(&[
        "sample",
        "--n",
        "5",
        "--p",
        "0.4",
        "--seed",
        "9",
        "--count",
        "2",
        "--output",
        base.to_str().unwrap(),
    ]));
    assert!(summary.contains("replicate 1:"), "got:\n{summary}");

    for k in 0..2 {
        let path = dir.path().join(format!("draw.{k}.json"));
        let text = std::fs::read_to_string(&path).expect("replicate document exists");
        let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
        assert_eq!(doc["n"], 5);
        assert!(doc["edges"].is_array());
    }

    // A single draw takes the output path verbatim.
    let single = dir.path().join("single.json");
    stdout_of(&chemspace(&[
        "sample",
        "--n",
        "5",
        "--p",
        "0.4",
        "--seed",
        "9",
        "--count",
        "1",
        "--output",
        single.to_str().unwrap(),
    ]));
    assert!(single.exists());
}

#[test]
fn extrema_locates_both_maxima() {
    let s_max = stdout_of(&chemspace(&["extrema", "--s-max", "100"]));
    assert!(s_max.contains("argmax: 67"), "got:\n{s_max}");

    let n_max = stdout_of(&chemspace(&["extrema", "--n-max", "50", "2"]));
    assert!(n_max.contains("argmax: 76"), "got:\n{n_max}");

    let json = stdout_of(&chemspace(&[
        "extrema", "--s-max", "100", "--format", "json",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(doc["argmax"], 67);
    assert!(doc["residual"].as_f64().unwrap() <= 1e-9);
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

#[test]
fn curves_recover_the_per_size_growth_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.csv");
    stdout_of(&chemspace(&[
        "curves",
        "--alpha",
        "-2",
        "--beta",
        "1",
        "--sizes",
        "2,3,4,5",
        "--output",
        path.to_str().unwrap(),
    ]));
    let csv = std::fs::read_to_string(&path).unwrap();

    // Under p(n) = n^-2, E[edges of size s] grows like n^(s-2).
    for s in [2u32, 3, 4, 5] {
        let label = format!("edges_s{s}");
        let points: Vec<(f64, f64)> = csv
            .lines()
            .skip(1)
            .map(|line| line.split(',').collect::<Vec<_>>())
            .filter(|fields| fields[0] == label)
            .map(|fields| {
                let n: f64 = fields[1].parse().unwrap();
                let ln_value: f64 = fields[2].parse().unwrap();
                (n.ln(), ln_value)
            })
            .collect();
        assert!(points.len() >= 30, "expected a dense grid for {label}");
        let slope = least_squares_slope(&points);
        let expected = f64::from(s) - 2.0;
        assert!(
            (slope - expected).abs() <= 0.05,
            "{label}: slope {slope} should be near {expected}"
        );
    }

    // The size-probability curves ride along and are n-dependent but tiny.
    assert!(csv.lines().any(|l| l.starts_with("p_s2,")), "got:\n{csv}");
}

#[test]
fn ingest_reports_the_toy_statistics_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("toy.rxn");
    std::fs::File::create(&input)
        .unwrap()
        .write_all(TOY_REACTIONS.as_bytes())
        .unwrap();
    let matrix = dir.path().join("matrix.json");

    let text = stdout_of(&chemspace(&[
        "ingest",
        input.to_str().unwrap(),
        "--matrix",
        matrix.to_str().unwrap(),
    ]));
    assert!(text.contains("edges: 4"), "got:\n{text}");
    assert!(text.contains("degree sequence: 3 3 3 3"), "got:\n{text}");
    assert!(
        text.contains("edges / mean degree: 1.333333"),
        "got:\n{text}"
    );

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&matrix).unwrap()).expect("valid JSON");
    assert_eq!(doc["counts"]["realized_cells"], 8);
    assert_eq!(doc["counts"]["conceptual_cells"], 196);
    assert_eq!(doc["realized"].as_array().unwrap().len(), 8);
}

#[test]
fn ingest_round_trips_through_the_json_document() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("toy.rxn");
    std::fs::write(&input, TOY_REACTIONS).unwrap();

    let json = stdout_of(&chemspace(&[
        "ingest",
        input.to_str().unwrap(),
        "--format",
        "json",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 4);

    // The emitted document is itself a valid `test` input.
    let doc_path = dir.path().join("toy.json");
    std::fs::write(&doc_path, &json).unwrap();
    let verdict = stdout_of(&chemspace(&["test", doc_path.to_str().unwrap()]));
    assert!(verdict.contains("verdict:"), "got:\n{verdict}");
}

#[test]
fn self_test_accepts_its_own_sampler() {
    let text = stdout_of(&chemspace(&[
        "test", "--n", "8", "--p", "0.3", "--seed", "7",
    ]));
    assert!(
        text.contains("verdict: consistent-with-random"),
        "got:\n{text}"
    );
}

#[test]
fn test_rejects_a_doctored_instance_but_still_exits_zero() {
    // Every size-2 edge of the complete universe on 6 vertices is removed:
    // no G(6, p) draw plausibly produces zero small edges among 286.
    let complete = chemspace_core::OrientedHypergraph::complete(6).unwrap();
    let doctored = chemspace_core::OrientedHypergraph::from_edges(
        6,
        complete.edges().filter(|e| e.size() > 2).cloned(),
    )
    .unwrap();
    let names = chemspace_core::reaction::NameTable::numbered(6);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doctored.json");
    let mut buf = Vec::new();
    chemspace_core::reaction::write_hypergraph(&mut buf, &doctored, &names).unwrap();
    std::fs::write(&path, &buf).unwrap();

    let out = chemspace(&["test", path.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.contains("verdict: rejected"), "got:\n{text}");
}

#[test]
fn failures_exit_with_their_error_category() {
    // Exact reports are capped: a huge n is a resource refusal, not a crash.
    let out = chemspace(&["count", "--n", "20000"]);
    assert_eq!(out.status.code(), Some(6));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error[resource]"));

    let out = chemspace(&["ingest", "/nonexistent/reactions.rxn"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error[io]"));

    // Mutually exclusive probability specifications are a usage error.
    let out = chemspace(&[
        "sample", "--n", "6", "--p", "0.3", "--alpha", "1", "--beta", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // --alpha without --beta is rejected by the parser as well.
    let out = chemspace(&["sample", "--n", "6", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_chemspace"))
        .args(["sample", "--n", "4", "--p", "0.5"])
        .env("CHEMSPACE_SEED", "not-a-number")
        .output()
        .expect("binary should run");
    assert_eq!(out.status.code(), Some(10));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error[config]"));
}
