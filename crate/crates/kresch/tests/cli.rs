//! End-to-end tests of the `kresch` binary: output bytes, exit codes, and
//! the stability guarantees of the machine-readable formats.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use kresch::racah::SweepReport;
use kresch::suites::VerificationReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kresch"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary exits")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn hyp_evaluates_exactly() {
    let out = run(&["hyp", "--num=-2,1", "--den=3", "--z=1"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "1/2\n");

    let out = run(&["hyp", "--num=-1,2,-1,2", "--den=1,-1,3", "--z=1"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "-1/3\n");

    // value at z = 0 is always 1
    let out = run(&["hyp", "--num=-3,1/2", "--den=7/5", "--z=0", "--format=csv"]);
    assert_eq!(stdout_of(&out), "1\n");
}

#[test]
fn hyp_json_carries_classification() {
    let out = run(&["hyp", "--num=-2,1", "--den=3", "--z=1", "--format=json"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["value"], "1/2");
    assert_eq!(v["classification"]["terminating"], true);
    assert_eq!(v["classification"]["truncation_index"], 2);
    assert_eq!(v["classification"]["denominator_valid"], true);
    assert_eq!(v["classification"]["unit_argument"], true);
}

#[test]
fn hyp_domain_and_usage_errors() {
    let out = run(&["hyp", "--num=1/2", "--den=3", "--z=1"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("terminate"), "{}", stderr_of(&out));

    // denominator pole: -1 is hit within the truncation range
    let out = run(&["hyp", "--num=-3,1", "--den=-1", "--z=1"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("-1"), "{}", stderr_of(&out));

    let out = run(&["hyp", "--num=oops", "--den=3", "--z=1"]);
    assert_eq!(code_of(&out), 64);

    let out = run(&["hyp", "--num=-2,1", "--den=3", "--z=1.5"]);
    assert_eq!(code_of(&out), 64);
}

#[test]
fn racah_value_and_box() {
    let out = run(&["racah", "-n", "1", "-s", "1", "-T", "2"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "-1/3\n");

    let out = run(&["racah", "-n", "0", "-s", "5", "-T", "9"]);
    assert_eq!(stdout_of(&out), "1\n");

    let out = run(&["racah", "-n", "2", "-s", "0", "-T", "2"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("T-1"));

    let out = run(&["racah", "-n", "1", "-s", "1", "-T", "2", "--format=json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["value"], "-1/3");
    assert_eq!(v["t"], 2);
}

#[test]
fn racah_table_grid() {
    let out = run(&["racah-table", "-T", "2", "--format=csv"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "1,1\n1,-1/3\n");

    let out = run(&["racah-table", "-T", "3", "--format=json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["t"], 3);
    assert_eq!(v["rows"][0], serde_json::json!(["1", "1", "1"]));
    // symmetric across the diagonal
    assert_eq!(v["rows"][1][2], v["rows"][2][1]);

    let out = run(&["racah-table", "-T", "0"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn transform_examples_and_round_trip() {
    let out = run_stdin(&["transform"], "1\n1\n1\n1\n");
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "1\n-1\n1\n-1\n");

    let out = run_stdin(&["transform", "--direction", "inverse"], "1\n-1\n1\n-1\n");
    assert_eq!(stdout_of(&out), "1\n1\n1\n1\n");

    // byte-for-byte round trip through files
    let dir = tempfile::tempdir().unwrap();
    let input_path = dir.path().join("input.seq");
    let original = "1\n-2/3\n0\n7\n22/7\n-1000000/999999\n";
    std::fs::write(&input_path, original).unwrap();

    let forward = run(&["transform", input_path.to_str().unwrap()]);
    assert_eq!(code_of(&forward), 0);
    let back = run_stdin(&["transform", "--direction", "inverse"], &stdout_of(&forward));
    assert_eq!(stdout_of(&back), original);

    // the other composition order
    let inverse = run_stdin(&["transform", "--direction", "inverse"], original);
    let there = run_stdin(&["transform"], &stdout_of(&inverse));
    assert_eq!(stdout_of(&there), original);
}

#[test]
fn transform_binomial_directions_compose() {
    let original = "1\n1/2\n1/3\n1/4\n1/5\n";
    let hat = run_stdin(&["transform", "--direction", "binomial"], original);
    let back = run_stdin(
        &["transform", "--direction", "binomial-inverse"],
        &stdout_of(&hat),
    );
    assert_eq!(stdout_of(&back), original);
}

#[test]
fn transform_tolerates_comments_and_blanks() {
    let out = run_stdin(&["transform"], "# header\n1\n\n  # indented comment\n1/2\n");
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "1\n0\n");

    let out = run_stdin(&["transform"], "");
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "");

    let out = run_stdin(&["transform", "--format=json"], "1\n1/3\n");
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["entries"], serde_json::json!(["1", "1/3"]));
}

#[test]
fn transform_reports_bad_line() {
    let out = run_stdin(&["transform"], "1\nnot-a-rational\n2\n");
    assert_eq!(code_of(&out), 64);
    assert!(stderr_of(&out).contains("line 2"), "{}", stderr_of(&out));

    let out = run(&["transform", "/no/such/file.seq"]);
    assert_eq!(code_of(&out), 64);
}

#[test]
fn sweep_range_and_exit_codes() {
    let out = run(&["sweep", "--t-min", "5", "--t-max", "3"]);
    assert_eq!(code_of(&out), 64);

    let out = run(&["sweep", "--t-min", "0", "--t-max", "3"]);
    assert_eq!(code_of(&out), 64);

    let out = run(&["sweep", "--t-min", "2", "--t-max", "2", "--format=json"]);
    assert_eq!(code_of(&out), 0);
    let report: SweepReport = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report.cells_checked, 4);
    assert!(report.violations.is_empty());

    let out = run(&["sweep", "--t-min", "1", "--t-max", "3", "--workers", "0"]);
    assert_eq!(code_of(&out), 64);
}

#[test]
fn sweep_output_is_worker_invariant() {
    let reference = run(&["sweep", "--t-min", "1", "--t-max", "12", "--format=json"]);
    assert_eq!(code_of(&reference), 0);
    for workers in ["2", "8"] {
        let out = run(&[
            "sweep", "--t-min", "1", "--t-max", "12", "--workers", workers, "--format=json",
        ]);
        assert_eq!(out.stdout, reference.stdout, "workers={workers}");
    }
    let csv_reference = run(&["sweep", "--t-min", "1", "--t-max", "12", "--format=csv"]);
    let csv_parallel = run(&[
        "sweep", "--t-min", "1", "--t-max", "12", "--workers", "8", "--format=csv",
    ]);
    assert_eq!(csv_parallel.stdout, csv_reference.stdout);
}

#[test]
fn sweep_json_round_trips_bytes() {
    let out = run(&["sweep", "--t-min", "1", "--t-max", "9", "--format=json"]);
    let text = stdout_of(&out);
    let report: SweepReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap() + "\n", text);
}

#[test]
fn sweep_csv_schema() {
    let out = run(&["sweep", "--t-min", "1", "--t-max", "4", "--format=csv"]);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kind,t,n,s,value");
    assert_eq!(lines[1], "max,1,0,0,1");
    assert_eq!(lines[2], "summary,1,4,30,0");
    assert_eq!(lines.len(), 3);
}

#[test]
fn sweep_grid_dump_writes_every_cell() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = run(&[
        "sweep",
        "--t-min",
        "1",
        "--t-max",
        "2",
        "--grid-dump",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    let dump = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dump, "t,n,s,value\n1,0,0,1\n2,0,0,1\n2,0,1,1\n2,1,0,1\n2,1,1,-1/3\n");
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--suite", "nosuch"]);
    assert_eq!(code_of(&out), 64);
    assert!(stderr_of(&out).contains("unknown suite"));

    let out = run(&["verify", "--suite", "lemma340", "--max-n", "100"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("lemma340: pass (100 cases"));

    // empty range for a suite that needs n >= 1 is a usage error
    let out = run(&["verify", "--suite", "lemma340", "--max-n", "0"]);
    assert_eq!(code_of(&out), 64);
}

#[test]
fn verify_all_runs_five_suites() {
    let out = run(&[
        "verify", "--suite", "all", "--max-n", "6", "--max-t", "4", "--format=json",
    ]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let reports: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 5);
    let names: Vec<&str> = reports.iter().map(|r| r.suite.as_str()).collect();
    assert_eq!(names, ["lemma340", "c310a", "c310b", "kernel", "c320"]);
    assert!(reports.iter().all(|r| r.passed()));
    // byte-stable round trip
    assert_eq!(serde_json::to_string(&reports).unwrap() + "\n", text);
}

#[test]
fn verify_csv_schema() {
    let out = run(&[
        "verify", "--suite", "c310b", "--max-n", "10", "--format=csv",
    ]);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "suite,status,cases_run,failures,elapsed_ms");
    assert!(lines[1].starts_with("c310b,pass,22,0,"), "{}", lines[1]);
}

#[test]
fn help_and_usage_exit_codes() {
    assert_eq!(code_of(&run(&["--help"])), 0);
    assert_eq!(code_of(&run(&["--version"])), 0);
    assert_eq!(code_of(&run(&["sweep", "--help"])), 0);
    // missing required arguments / unknown flags are usage errors
    assert_eq!(code_of(&run(&[])), 64);
    assert_eq!(code_of(&run(&["racah", "-n", "1"])), 64);
    assert_eq!(code_of(&run(&["sweep", "--t-min", "1", "--t-max", "2", "--bogus"])), 64);
    assert_eq!(code_of(&run(&["racah", "-n", "-1", "-s", "0", "-T", "2"])), 64);
}
