//! Acceptance criteria 1 through 9. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.
//!
//! Run with `cargo test -p eulerian-lab-cli --test acceptance`.

#[path = "../../core/tests/props/mod.rs"]
mod props;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use eulerian_lab::check::Checks;
use eulerian_lab::perm::Budget;
use eulerian_lab::roots::check_interlacing_sequence;
use eulerian_lab::sampling::sample_theorem;
use eulerian_lab::transforms::FamilyCache;
use eulerian_lab::verify::{algebraic_suite, brute_force_suite, geometry_suite, standard_triangulations};
use eulerian_lab::Poly;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_eulerian-lab");

const Q_TABLE: [&[&str]; 5] = [
    &["1"],
    &["1", "1+x"],
    &["1+x", "1+2x", "1+3x+x^2"],
    &["1+4x+x^2", "1+5x+2x^2", "1+6x+4x^2", "1+7x+7x^2+x^3"],
    &["1+11x+11x^2+x^3", "1+12x+15x^2+2x^3", "1+13x+20x^2+4x^3", "1+14x+26x^2+8x^3", "1+15x+33x^2+15x^3+x^4"],
];

const D_TABLE: [&[&str]; 5] = [
    &["1"],
    &["1", "0"],
    &["1+x", "x", "x"],
    &["1+4x+x^2", "3x+x^2", "2x+x^2", "x+x^2"],
    &["1+11x+11x^2+x^3", "7x+10x^2+x^3", "4x+9x^2+x^3", "2x+8x^2+x^3", "x+7x^2+x^3"],
];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }
}

fn poly(s: &str) -> Poly {
    s.parse().unwrap_or_else(|e| panic!("cannot parse {s:?}: {e}"))
}

struct Run {
    code: i32,
    json: Value,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(BIN)
        .args(args)
        .args(["--format", "json"])
        .env_remove("EULERIAN_LAB_BUDGET")
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap_or(-1), json }
}

fn row_polys(json: &Value) -> Vec<Poly> {
    json["rows"]
        .as_array()
        .map(|rows| rows.iter().map(|r| poly(r["polynomial"].as_str().unwrap_or(""))).collect())
        .unwrap_or_default()
}

fn checks_outcome(checks: &Checks) -> Outcome {
    let failures: Vec<String> = checks.failures().take(3).map(|c| c.name.clone()).collect();
    Outcome::new(
        checks.all_passed() && !checks.is_empty(),
        format!(
            "{}/{} checks pass{}",
            checks.passed_count(),
            checks.len(),
            if failures.is_empty() { String::new() } else { format!("; first failures: {failures:?}") }
        ),
    )
}

fn criterion_1() -> Outcome {
    let mut matched = Vec::new();
    for (name, table) in [("qnk", &Q_TABLE), ("dnk", &D_TABLE)] {
        let r = run(&["table", name, "--n", "4"]);
        let got = row_polys(&r.json);
        let want: Vec<Poly> = table.iter().flat_map(|row| row.iter().map(|s| poly(s))).collect();
        let hits = got.iter().zip(&want).filter(|(a, b)| a == b).count();
        matched.push((name, r.code == 0 && got.len() == 15 && hits == 15, hits));
    }
    Outcome::new(
        matched.iter().all(|m| m.1),
        matched.iter().map(|(n, _, h)| format!("{n} {h}/15")).collect::<Vec<_>>().join(", "),
    )
}

fn criterion_2() -> Outcome {
    let mut cache = FamilyCache::new();
    match brute_force_suite(&mut cache, 6, &Budget::default()) {
        Ok(c) => checks_outcome(&c),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_3() -> Outcome {
    let mut cache = FamilyCache::new();
    match algebraic_suite(&mut cache, 8, &Budget::default()) {
        Ok(c) => checks_outcome(&c),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn rows_interlacing(which: &str) -> Result<usize, String> {
    let mut cache = FamilyCache::new();
    let mut certified = 0;
    for n in 0..=9 {
        let row = match which {
            "q" => cache.qnk_row(n),
            _ => cache.dnk_row(n),
        }
        .map_err(|e| e.to_string())?;
        let v = check_interlacing_sequence(&row);
        if !v.is_interlacing() {
            return Err(format!("{which} row n={n}: {v:?}"));
        }
        certified += 1;
    }
    Ok(certified)
}

fn criterion_4() -> Outcome {
    let rows = rows_interlacing("q");
    let mut cache = FamilyCache::new();
    let samples = sample_theorem(&mut cache, 8, 100, 1);
    match (rows, samples) {
        (Ok(rows), Ok(s)) => Outcome::new(
            s.eulerian.len() == 100 && s.eulerian_passed() == 100,
            format!("q rows n=0..9 interlacing ({rows}/10); A°(p) samples {}/100", s.eulerian_passed()),
        ),
        (Err(e), _) => Outcome::new(false, e),
        (_, Err(e)) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_5() -> Outcome {
    let rows = rows_interlacing("d");
    let mut cache = FamilyCache::new();
    let samples = sample_theorem(&mut cache, 8, 100, 1);
    match (rows, samples) {
        (Ok(rows), Ok(s)) => Outcome::new(
            s.derangement.len() == 100 && s.derangement_passed() == 100,
            format!("d rows n=0..9 interlacing ({rows}/10); I_n D(p) samples {}/100", s.derangement_passed()),
        ),
        (Err(e), _) => Outcome::new(false, e),
        (_, Err(e)) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_6() -> Outcome {
    let budget = Budget::default();
    let ts = match standard_triangulations(5, 5, 4, 4, &budget) {
        Ok(t) => t,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let mut cache = FamilyCache::new();
    match geometry_suite(&mut cache, &ts, &budget) {
        Ok(c) => {
            let o = checks_outcome(&c);
            Outcome::new(o.passed, format!("{} triangulations; {}", ts.len(), o.detail))
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for part in ["a", "b"] {
        for n in 1..=10 {
            let ns = n.to_string();
            let r = run(&["check-conjecture", "--family", "barycentric", "--n", &ns, "--part", part]);
            count += 1;
            if r.code != 0 || r.json["passed"] != Value::Bool(true) {
                bad.push(format!("barycentric n={n} part {part}"));
            }
        }
        for n in 1..=6 {
            let ns = n.to_string();
            let r = run(&["check-conjecture", "--family", "colored", "--r", "2", "--n", &ns, "--part", part]);
            count += 1;
            if r.code != 0 || r.json["passed"] != Value::Bool(true) {
                bad.push(format!("colored r=2 n={n} part {part}"));
            }
        }
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let file = dir.join("acceptance-barycentric-8.json");
    let exported = Command::new(BIN)
        .args(["ft-from-family", "--family", "barycentric", "--n", "8", "--out"])
        .arg(&file)
        .status()
        .map(|s| s.success())
        .unwrap_or(false);
    let path = file.to_string_lossy().into_owned();
    let mut round_trip = exported;
    for part in ["a", "b"] {
        let from_file = run(&["check-conjecture", "--ft-file", &path, "--part", part]);
        let from_family = run(&["check-conjecture", "--family", "barycentric", "--n", "8", "--part", part]);
        round_trip &= from_file.code == 0
            && from_file.json["passed"] == Value::Bool(true)
            && row_polys(&from_file.json) == row_polys(&from_family.json)
            && !row_polys(&from_file.json).is_empty();
    }
    if !round_trip {
        bad.push("ft-file round trip".into());
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} conjecture runs, ft-file round trip {}; failing: {bad:?}",
            count,
            if round_trip { "ok" } else { "broken" }
        ),
    )
}

fn criterion_8() -> Outcome {
    let one_x = poly("1+x");
    let one_2x = poly("1+2x");
    let x = poly("x");
    let h: Vec<Poly> = (0..=2).map(|k| &one_x.pow(2 - k) * &one_2x.pow(k)).collect();
    let l: Vec<Poly> = (0..=2).map(|k| &x.pow(k) * &one_x.pow(2 - k)).collect();
    let a = run(&["check-conjecture", "--family", "generic-binomial", "--n", "2", "--part", "a"]);
    let b = run(&["check-conjecture", "--family", "generic-binomial", "--n", "2", "--part", "b"]);
    let values = row_polys(&a.json) == h && row_polys(&b.json) == l;
    let both_fail =
        a.code == 1 && b.code == 1 && a.json["passed"] == Value::Bool(false) && b.json["passed"] == Value::Bool(false);
    Outcome::new(
        values && both_fail,
        format!("values match: {values}; both sequences rejected with exit 1: {both_fail}"),
    )
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let all = props::all();
    for (name, property) in &all {
        if let Err(e) = property(props::CASES, props::SEED) {
            failures.push(format!("{name}: {e}"));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{}/{} properties green at {} cases each, seed {:#x}; {failures:?}",
            all.len() - failures.len(),
            all.len(),
            props::CASES,
            props::SEED
        ),
    )
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "table reproduction", Duration::from_secs(1), criterion_1),
        (2, "brute-force equivalence n <= 6", Duration::from_secs(120), criterion_2),
        (3, "identity suite n <= 8", Duration::from_secs(120), criterion_3),
        (4, "q_(n,k) interlacing and A° samples", Duration::from_secs(300), criterion_4),
        (5, "d_(n,k) interlacing and derangement samples", Duration::from_secs(300), criterion_5),
        (6, "face-level geometry", Duration::from_secs(300), criterion_6),
        (7, "conjecture on barycentric and 2-colored families", Duration::from_secs(600), criterion_7),
        (8, "generic (1+x)^m counterexample", Duration::from_secs(1), criterion_8),
        (9, "property suites", Duration::from_secs(120), criterion_9),
    ];
    let mut all_passed = true;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let passed = outcome.passed && in_time;
        all_passed &= passed;
        println!(
            "{} criterion {id}: {name} [{:.2} s, limit {} s{}] {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", over time" },
            outcome.detail
        );
    }
    if !all_passed {
        std::process::exit(1);
    }
}
