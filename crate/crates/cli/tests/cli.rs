use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_fuzzysigma");

const TRIANGLE: &str = "fuzzygraph 1
vertices 3
v 0 1
v 1 1
v 2 1
edges 3
e 0 1 0.8
e 0 2 0.3
e 1 2 0.6
";

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_reports_triangle_values() {
    let dir = scratch("compute");
    let path = dir.join("triangle.fg");
    fs::write(&path, TRIANGLE).unwrap();
    let o = run(&["compute", path.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("ew = 1.7\n"), "{out}");
    assert!(out.contains("sigma_star = 0.042222222\n"), "{out}");
    assert!(out.contains("sigma_edge_sum = 0.234\n"), "{out}");
}

#[test]
fn generated_graph_pipes_into_compute() {
    let o = run(&[
        "gen",
        "--family",
        "single_edge",
        "--n",
        "4",
        "--alpha",
        "0.9",
    ]);
    assert!(o.status.success());
    let o = run_stdin(&["compute", "-"], &stdout(&o));
    assert!(o.status.success());
    assert!(stdout(&o).contains("sigma_star = 0.2025\n"));
}

#[test]
fn regular_union_serializes_all_edges() {
    let o = run(&["gen", "--family", "regular_union", "--n", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 6);
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 9);
    let o = run_stdin(&["compute"], &text);
    assert!(stdout(&o).contains("sigma_star = 0\n"));
}

#[test]
fn syntax_errors_exit_one() {
    let o = run_stdin(&["compute"], "fuzzygraph 1\nvertices x\n");
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["compute", "/nonexistent/graph.fg"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validation_errors_exit_two() {
    let bad = TRIANGLE.replace("v 2 1", "v 2 0.2");
    let o = run_stdin(&["compute"], &bad);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line"), "{err}");
    let o = run(&["gen", "--family", "cycle", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn complement_operation() {
    let dir = scratch("complement");
    let input = dir.join("triangle.fg");
    let output = dir.join("complement.fg");
    fs::write(&input, TRIANGLE).unwrap();
    let o = run(&[
        "op",
        "--kind",
        "complement",
        input.to_str().unwrap(),
        "-o",
        output.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&output).unwrap();
    assert!(text.contains("e 0 1 0.2\n"), "{text}");
    assert!(text.contains("e 0 2 0.7\n"), "{text}");
    assert!(text.contains("e 1 2 0.4\n"), "{text}");
}

#[test]
fn binary_operation_needs_two_graphs() {
    let dir = scratch("binary");
    let input = dir.join("triangle.fg");
    fs::write(&input, TRIANGLE).unwrap();
    let out = dir.join("out.fg");
    let o = run(&[
        "op",
        "--kind",
        "union",
        input.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "op",
        "--kind",
        "cartesian",
        input.to_str().unwrap(),
        input.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("vertices 9\n"));
}

#[test]
fn check_is_reproducible_and_writes_witnesses() {
    let dir = scratch("check");
    let mut reports = Vec::new();
    for name in ["a.tsv", "b.tsv"] {
        let report = dir.join(name);
        let o = run(&[
            "check",
            "--claims",
            "C4,C7,C10",
            "--trials",
            "3",
            "--seed",
            "9",
            "--nmax",
            "6",
            "--report",
            report.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        reports.push(fs::read_to_string(&report).unwrap());
    }
    // witness directory names differ by report name only
    assert_eq!(
        reports[0].replace("a.tsv.witnesses", "X"),
        reports[1].replace("b.tsv.witnesses", "X")
    );
    let witnesses = dir.join("a.tsv.witnesses");
    let files: Vec<_> = fs::read_dir(&witnesses).unwrap().collect();
    assert!(!files.is_empty());
    for f in files {
        let path = f.unwrap().path();
        let o = run(&["compute", path.to_str().unwrap()]);
        assert!(o.status.success());
    }
}

#[test]
fn check_rejects_unknown_claims() {
    let dir = scratch("unknown");
    let report = dir.join("r.tsv");
    let o = run(&[
        "check",
        "--claims",
        "C99",
        "--trials",
        "1",
        "--seed",
        "1",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
