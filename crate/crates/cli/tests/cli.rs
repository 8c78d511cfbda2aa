use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distchroma")).args(args).output().unwrap()
}

fn stdout_records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn corpus_slice(dir: &Path, lines: usize) -> PathBuf {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data/connected_upto8.g6");
    let text: Vec<String> = std::fs::read_to_string(corpus).unwrap().lines().take(lines).map(String::from).collect();
    let path = dir.join("slice.g6");
    std::fs::write(&path, text.join("\n") + "\n").unwrap();
    path
}

#[test]
fn petersen_square_needs_ten_colours() {
    let out = run(&["color", "--input", "petersen", "--gamma", "2", "--exact"]);
    assert!(out.status.success());
    let recs = stdout_records(&out);
    assert_eq!(recs[0]["tool"], "distchroma");
    assert_eq!(recs[1]["status"], "ok");
    assert_eq!(recs[1]["report"]["chi"], 10);
}

#[test]
fn cycle_formula_agrees_with_solver() {
    let out = run(&["formulas", "--cycle", "7", "--gamma", "2", "--verify"]);
    assert!(out.status.success());
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["chi"], 4);
    assert_eq!(rec["exact"], 4);
}

#[test]
fn csv_bounds_have_fixed_columns() {
    let out = run(&["bounds", "--input", "complete:4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "id,n,delta,gamma,M,best_bound,exact_chi,equality_class");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..7], &["complete:4", "4", "3", "2", "9", "8", "4"]);
}

#[test]
fn unknown_input_exits_with_one() {
    let out = run(&["bounds", "--input", "no-such-graph"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-graph"));
}

#[test]
fn malformed_graph6_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.g6");
    std::fs::write(&path, "Ch\nI?\n").unwrap();
    let out = run(&["invariants", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.g6:2"));
}

#[test]
fn records_do_not_depend_on_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let input = corpus_slice(dir.path(), 200);
    let mut bodies = Vec::new();
    for jobs in ["1", "4"] {
        let out_path = dir.path().join(format!("scan{jobs}.jsonl"));
        let out = run(&["scan", "--input", input.to_str().unwrap(), "--output", out_path.to_str().unwrap(), "--jobs", jobs]);
        assert!(out.status.success());
        let text = std::fs::read_to_string(&out_path).unwrap();
        bodies.push(text.lines().skip(1).map(String::from).collect::<Vec<_>>());
    }
    assert_eq!(bodies[0].len(), 200);
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn interrupted_output_resumes_to_the_same_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = corpus_slice(dir.path(), 120);
    let out_path = dir.path().join("out.jsonl");
    let args = ["bounds", "--input", input.to_str().unwrap(), "--output", out_path.to_str().unwrap()];
    assert!(run(&args).status.success());
    let expected = std::fs::read_to_string(&out_path).unwrap();

    // keep the header and 30 records, then tear the next line
    let mut lines = expected.lines();
    let mut torn: String = lines.by_ref().take(31).map(|l| format!("{l}\n")).collect();
    torn.push_str(&lines.next().unwrap()[..10]);
    std::fs::write(&out_path, torn).unwrap();
    assert!(run(&args).status.success());
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), expected);
}

#[test]
fn resume_rejects_a_different_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let input = corpus_slice(dir.path(), 20);
    let out_path = dir.path().join("out.jsonl");
    let base = ["bounds", "--input", input.to_str().unwrap(), "--output", out_path.to_str().unwrap()];
    assert!(run(&base).status.success());
    let mut other = base.to_vec();
    other.extend(["--gamma", "3"]);
    assert_eq!(run(&other).status.code(), Some(1));
}

#[test]
fn enumeration_counts_small_graphs() {
    let out = run(&["enumerate", "--max-n", "5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1 + 1 + 2 + 6 + 21);
}
