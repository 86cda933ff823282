use std::path::Path;
use std::process::{Command, Output};

const SAMPLE: &str =
    "BHNET 1\np=4 gamma=2 n=9\nL2: 3\nL1: 3 4 2\nB2.1: 100\nB1.1: 011\nB1.2: 100110\nB1.3: 1\n";

fn hiernet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hiernet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sample_file(dir: &Path) -> std::path::PathBuf {
    let f = dir.join("sample.bhnet");
    std::fs::write(&f, SAMPLE).unwrap();
    f
}

#[test]
fn generate_regular_writes_full_network() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.bhnet");
    let run = hiernet(&[
        "generate",
        "--regular",
        "9",
        "--p",
        "3",
        "--mu",
        "0.1",
        "--seed",
        "7",
        "--out",
        path(&out),
    ]);
    assert!(run.status.success(), "{run:?}");
    assert!(stdout(&run).contains("N = 19683"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("n=19683"));
}

#[test]
fn generate_is_deterministic_and_single_node_works() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for f in [&a, &b] {
        let run = hiernet(&[
            "generate",
            "--nodes",
            "500",
            "--p",
            "4",
            "--mu",
            "0.4",
            "--seed",
            "11",
            "--out",
            path(f),
        ]);
        assert!(run.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let one = dir.path().join("one.bhnet");
    let run = hiernet(&[
        "generate",
        "--levels",
        "0",
        "--p",
        "3",
        "--mu",
        "0.5",
        "--seed",
        "1",
        "--out",
        path(&one),
    ]);
    assert!(run.status.success());
    assert!(std::fs::read_to_string(&one).unwrap().contains("n=1"));
}

#[test]
fn conflicting_or_missing_mode_is_a_usage_error() {
    let run = hiernet(&[
        "generate", "--nodes", "5", "--levels", "2", "--p", "3", "--mu", "1", "--out", "x",
    ]);
    assert_eq!(run.status.code(), Some(2));
    let run = hiernet(&["generate", "--p", "3", "--mu", "1", "--out", "x"]);
    assert_eq!(run.status.code(), Some(2));
    let run = hiernet(&[
        "generate", "--nodes", "5", "--p", "1", "--mu", "1", "--out", "x",
    ]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn analyze_sample_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample_file(dir.path());
    let run = hiernet(&[
        "analyze",
        "--input",
        path(&f),
        "--props",
        "edges,c3,c4",
        "--verify",
    ]);
    assert!(run.status.success());
    assert_eq!(stdout(&run), "edges 18\nc3 17\nc4 43\n");

    let run = hiernet(&[
        "analyze",
        "--input",
        path(&f),
        "--props",
        "degree-dist",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&run),
        "property,value\ndegree-dist[1],2\ndegree-dist[4],3\ndegree-dist[5],2\ndegree-dist[6],2\n"
    );

    let run = hiernet(&[
        "analyze",
        "--input",
        path(&f),
        "--props",
        "c3",
        "--node",
        "5",
    ]);
    assert_eq!(stdout(&run), "c3 11\n");
}

#[test]
fn analyze_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample_file(dir.path());
    let out = dir.path().join("r.json");
    let run = hiernet(&[
        "analyze",
        "--input",
        path(&f),
        "--props",
        "c4,distance-dist",
        "--format",
        "json",
        "--out",
        path(&out),
    ]);
    assert!(run.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["c4"], 43);
    assert_eq!(v["distance-dist"]["2"], 4);
    assert_eq!(v["distance-dist"]["unreachable"], 14);
}

#[test]
fn analyze_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample_file(dir.path());
    let run = hiernet(&["analyze", "--input", path(&f), "--props", "edges,bogus"]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&run.stderr).contains("bogus"));

    let bad = dir.path().join("bad.bhnet");
    std::fs::write(&bad, SAMPLE.replace("B1.2: 100110", "B1.2: 10011")).unwrap();
    let run = hiernet(&["analyze", "--input", path(&bad)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&run.stderr).contains("line"));

    let run = hiernet(&["analyze", "--input", path(&f), "--verify", "--cap", "5"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&run.stderr).contains("cap of 5"));
}

#[test]
fn ensemble_outputs_and_worker_independence() {
    let dir = tempfile::tempdir().unwrap();
    let mut jsons = Vec::new();
    for workers in ["1", "3"] {
        let out = dir.path().join(format!("e{workers}.json"));
        let run = hiernet(&[
            "ensemble",
            "--nodes",
            "300",
            "--p",
            "3",
            "--mu",
            "0.5",
            "--seed",
            "5",
            "--copies",
            "8",
            "--props",
            "edges,c3,degree-dist",
            "--format",
            "json",
            "--workers",
            workers,
            "--out",
            path(&out),
        ]);
        assert!(run.status.success(), "{run:?}");
        jsons.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(jsons[0], jsons[1]);

    let csv = dir.path().join("e.csv");
    let run = hiernet(&[
        "ensemble",
        "--regular",
        "3",
        "--p",
        "3",
        "--mu",
        "0.3",
        "--copies",
        "1",
        "--props",
        "c3",
        "--out",
        path(&csv),
    ]);
    assert!(run.status.success());
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("copy,property,value\n"));
    let value = rows
        .lines()
        .find(|l| l.starts_with("0,c3,"))
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .to_string();
    let summary = std::fs::read_to_string(dir.path().join("e.summary.csv")).unwrap();
    assert!(summary.contains(&format!("min,c3,{value}")));
    assert!(summary.contains(&format!("max,c3,{value}")));
    assert!(summary.contains(&format!("mean,c3,{value}")));
}

#[test]
fn export_edge_list_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample_file(dir.path());
    let out = dir.path().join("edges.txt");
    let run = hiernet(&["export", "--input", path(&f), "--out", path(&out)]);
    assert!(run.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 18);
    assert!(text.starts_with("1 3\n"));

    let empty = dir.path().join("empty.bhnet");
    std::fs::write(&empty, "BHNET 1\np=3 gamma=1 n=3\nL1: 3\nB1.1: 000\n").unwrap();
    let run = hiernet(&["export", "--input", path(&empty), "--out", path(&out)]);
    assert!(run.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");

    let big = dir.path().join("big.bhnet");
    let run = hiernet(&[
        "generate",
        "--nodes",
        "1000000",
        "--p",
        "4",
        "--mu",
        "1.2",
        "--out",
        path(&big),
    ]);
    assert!(run.status.success());
    let run = hiernet(&["export", "--input", path(&big), "--out", path(&out)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&run.stderr).contains("cap of 5000"));
}
