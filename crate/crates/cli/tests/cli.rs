use std::path::PathBuf;
use std::process::{Command, Output};

use eulerian_lab::Poly;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_eulerian-lab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("EULERIAN_LAB_BUDGET").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn exit_zero_on_passing_checks() {
    assert_eq!(code(&run(&["table", "qnk", "--n", "4"])), 0);
    assert_eq!(code(&run(&["verify-identities", "--n", "4", "--family", "barycentric"])), 0);
    assert_eq!(code(&run(&["check-conjecture", "--family", "barycentric", "--n", "5", "--part", "b"])), 0);
}

#[test]
fn exit_one_on_counterexample() {
    let o = run(&["check-conjecture", "--family", "generic-binomial", "--n", "2", "--part", "a", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let j = json(&o);
    assert_eq!(j["passed"], Value::Bool(false));
    assert!(!j["failures"].as_array().unwrap().is_empty());
}

#[test]
fn exit_two_on_usage_budget_and_parse_errors() {
    assert_eq!(code(&run(&["table", "nonsense"])), 2);
    assert_eq!(code(&run(&["check-conjecture", "--part", "a"])), 2);
    let budget =
        Command::new(BIN).args(["verify-identities", "--n", "6"]).env("EULERIAN_LAB_BUDGET", "100").output().unwrap();
    assert_eq!(code(&budget), 2);
    assert!(String::from_utf8_lossy(&budget.stderr).contains("budget"));
    let bad = tmp("malformed-triangle.json");
    std::fs::write(&bad, r#"{"n": 2, "f": [[1], [1, 2]]}"#).unwrap();
    assert_eq!(code(&run(&["check-conjecture", "--ft-file", bad.to_str().unwrap(), "--part", "a"])), 2);
    assert_eq!(code(&run(&["table", "generic-h", "--n", "2", "--seq", "1; 1+y"])), 2);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["sample-theorem1", "--n", "5", "--samples", "12", "--seed", "9", "--format", "json"][..],
        &["verify-identities", "--n", "4", "--family", "colored", "--r", "2", "--format", "csv"][..],
        &["check-conjecture", "--family", "edgewise", "--r", "2", "--n", "3", "--part", "a"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn different_seeds_draw_different_samples() {
    let a = json(&run(&["sample-theorem1", "--n", "4", "--samples", "5", "--seed", "1", "--format", "json"]));
    let b = json(&run(&["sample-theorem1", "--n", "4", "--samples", "5", "--seed", "2", "--format", "json"]));
    assert_ne!(a["details"], b["details"]);
    assert_eq!(a["seed"], 1);
}

#[test]
fn csv_table_has_header_and_one_line_per_polynomial() {
    let o = run(&["table", "dnk", "--n", "3", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["n", "k", "polynomial", "real_rooted", "flags"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    let last: Poly = rows[9][2].parse().unwrap();
    assert_eq!(last, "x+x^2".parse().unwrap());
}

#[test]
fn out_flag_writes_file() {
    let path = tmp("table-a.json");
    let o = run(&["table", "A", "--n", "5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let last: Poly = j["rows"][5]["polynomial"].as_str().unwrap().parse().unwrap();
    assert_eq!(last, "1+26x+66x^2+26x^3+x^4".parse().unwrap());
}

#[test]
fn exported_triangle_reloads() {
    let path = tmp("colored-4.json");
    let o = run(&["ft-from-family", "--family", "colored", "--r", "2", "--n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let p = path.to_str().unwrap();
    let from_file = json(&run(&["check-conjecture", "--ft-file", p, "--part", "a", "--format", "json"]));
    let from_family = json(&run(&[
        "check-conjecture",
        "--family",
        "colored",
        "--r",
        "2",
        "--n",
        "4",
        "--part",
        "a",
        "--format",
        "json",
    ]));
    assert_eq!(from_file["rows"], from_family["rows"]);
    assert_eq!(from_file["passed"], Value::Bool(true));
}

#[test]
fn generic_tables_from_sequence() {
    let o = run(&["table", "generic-l", "--n", "2", "--seq", "1; 1+x; 1+2x+x^2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o)["rows"].as_array().unwrap().clone();
    let polys: Vec<Poly> =
        rows.iter().filter(|r| r["n"] == 2).map(|r| r["polynomial"].as_str().unwrap().parse().unwrap()).collect();
    let want: Vec<Poly> = ["1+2x+x^2", "x+x^2", "x^2"].iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(polys, want);
}

#[test]
fn dump_complex_reports_faces() {
    let o = run(&["dump-complex", "--family", "barycentric", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["passed"].as_bool().unwrap());
}
