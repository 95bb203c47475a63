//! Command implementations for the `eulerian-lab` binary.
//!
//! [`execute`] turns parsed arguments into a [`Report`]; [`render`] formats it.
//! Both are public so integration tests can drive commands without a subprocess.

pub mod golden;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eulerian_lab::check::Checks;
use eulerian_lab::perm::Budget;
use eulerian_lab::poly::Poly;
use eulerian_lab::roots::is_real_rooted;
use eulerian_lab::sampling::{sample_theorem, sample_three_term};
use eulerian_lab::simplicial::{CarriedTriangulation, ConjecturePart, ConjectureVerdict, FTriangle};
use eulerian_lab::structure::{is_gamma_positive, is_symmetric};
use eulerian_lab::transforms::{generic_triangles, FamilyCache};
use eulerian_lab::verify::{
    algebraic_suite, brute_force_suite, capture, colored_local_suite, geometry_suite, interlacing_suite,
    uniform_sampling_suite,
};
use eulerian_lab::Error;

#[derive(Debug, Parser)]
#[command(name = "eulerian-lab", version, about = "Exact checks for Eulerian-type polynomial transformations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    /// `A_n`.
    #[value(name = "A")]
    A,
    /// Binomial Eulerian polynomials.
    #[value(name = "Atilde")]
    Atilde,
    /// `p_{n,k}`.
    #[value(name = "p")]
    P,
    /// `q_{n,k}`.
    #[value(name = "qnk", alias = "q")]
    Qnk,
    /// `q*_{n,k,j}`.
    #[value(name = "qstar")]
    Qstar,
    /// Derangement polynomials `d_n`.
    #[value(name = "d")]
    D,
    /// `d_{n,k}`.
    #[value(name = "dnk")]
    Dnk,
    /// Type-B Eulerian polynomials.
    #[value(name = "B")]
    B,
    /// Images `D^B(x^n)`.
    #[value(name = "DB")]
    Db,
    /// `h_{n,k}` from a sequence given by `--seq`.
    #[value(name = "generic-h")]
    GenericH,
    /// `ℓ_{n,k}` from a sequence given by `--seq`.
    #[value(name = "generic-l")]
    GenericL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Barycentric,
    Trivial,
    /// `r`-fold edgewise subdivision.
    Edgewise,
    /// `r`-colored barycentric subdivision.
    Colored,
    /// `h_m = (1+x)^m`, with no triangulation behind it.
    GenericBinomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Part {
    A,
    B,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a triangle of polynomials; q_{n,k} and d_{n,k} are compared with the printed tables for n <= 4.
    Table {
        name: TableName,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Semicolon-separated h_0; h_1; ... for the generic tables.
        #[arg(long)]
        seq: Option<String>,
    },
    /// Check whether (q_{F,n,k})_k (part a) or (ℓ_{F,n,k})_k (part b) is interlacing.
    CheckConjecture {
        #[arg(long, value_enum, required_unless_present = "ft_file")]
        family: Option<Family>,
        /// f-triangle JSON file {"n": n, "f": [[...], ...]}.
        #[arg(long, conflicts_with = "family")]
        ft_file: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        part: Part,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Run the identity, enumeration and interlacing suites up to n.
    VerifyIdentities {
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Also run the face-level suite on explicit triangulations of this family.
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Push seeded samples of P_n[x] through the Eulerian and derangement transformations.
    SampleTheorem1 {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print the faces of an explicit triangulation, one face per line.
    DumpComplex {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Dump the antiprism sphere over the triangulation instead.
        #[arg(long)]
        antiprism: bool,
    },
    /// Print the f-triangle JSON of a family.
    FtFromFamily {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub polynomial: String,
    pub real_rooted: bool,
    pub flags: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    pub summary: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Checks::is_empty")]
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    /// Raw payload printed verbatim in text mode.
    #[serde(skip)]
    pub body: Option<String>,
    /// Print `body` in JSON mode too.
    #[serde(skip)]
    pub body_is_json: bool,
}

impl Report {
    fn new(command: String, seed: u64) -> Self {
        Report {
            command,
            seed,
            passed: true,
            summary: Vec::new(),
            rows: Vec::new(),
            checks: Checks::new(),
            details: None,
            failures: Vec::new(),
            timing_ms: None,
            body: None,
            body_is_json: false,
        }
    }

    fn add_checks(&mut self, checks: Checks) {
        self.checks.extend(checks);
    }

    fn finish(mut self) -> Self {
        let mut failures: Vec<String> = self
            .checks
            .failures()
            .map(|c| if c.detail.is_empty() { c.name.clone() } else { format!("{}: {}", c.name, c.detail) })
            .collect();
        failures.append(&mut self.failures);
        self.failures = failures;
        self.passed = self.failures.is_empty();
        if !self.checks.is_empty() {
            self.summary.push(format!("{}/{} checks passed", self.checks.passed_count(), self.checks.len()));
        }
        self
    }
}

fn family_name(f: Family) -> String {
    f.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn row(n: usize, k: usize, j: Option<usize>, p: &Poly, flags: String) -> Row {
    Row { n, k, j, polynomial: p.to_string(), real_rooted: is_real_rooted(p), flags }
}

fn symmetry_flags(p: &Poly, center: usize) -> String {
    let mut f = Vec::new();
    if is_symmetric(p, center) {
        f.push("symmetric");
    }
    if is_gamma_positive(p, center) {
        f.push("gamma_positive");
    }
    f.join(";")
}

fn parse_seq(seq: Option<&str>) -> eulerian_lab::Result<Vec<Poly>> {
    let s = seq.ok_or_else(|| Error::Parse("the generic tables need --seq \"h_0; h_1; ...\"".into()))?;
    s.split(';').map(|p| p.trim().parse()).collect()
}

fn triangulation(family: Family, n: usize, r: usize, budget: &Budget) -> eulerian_lab::Result<CarriedTriangulation> {
    match family {
        Family::Barycentric => CarriedTriangulation::barycentric(n, budget),
        Family::Trivial => Ok(CarriedTriangulation::trivial(n)),
        Family::Edgewise => CarriedTriangulation::edgewise(n, r, budget),
        Family::Colored => CarriedTriangulation::colored_barycentric(n, r, budget),
        Family::GenericBinomial => {
            Err(Error::OutOfRange("generic-binomial is a polynomial sequence, not a triangulation".into()))
        }
    }
}

/// The f-triangle of a family: closed form for the barycentric and trivial
/// triangulations, explicit construction otherwise.
pub fn family_ftriangle(family: Family, n: usize, r: usize, budget: &Budget) -> eulerian_lab::Result<FTriangle> {
    match family {
        Family::Barycentric => Ok(FTriangle::barycentric(n)),
        Family::Trivial => Ok(FTriangle::trivial(n)),
        _ => {
            let t = triangulation(family, n, r, budget)?;
            FTriangle::from_triangulation(&t)
                .ok_or_else(|| Error::InvalidComplex(format!("{} is not uniform", t.name())))
        }
    }
}

pub fn cmd_table(
    name: TableName,
    n_max: usize,
    seq: Option<&str>,
    cache: &mut FamilyCache,
) -> eulerian_lab::Result<Report> {
    let label = name.to_possible_value().expect("no skipped variants");
    let mut report = Report::new(format!("table {} --n {n_max}", label.get_name()), 1);
    let mut checks = Checks::new();
    match name {
        TableName::A | TableName::Atilde | TableName::D | TableName::B | TableName::Db => {
            for n in 0..=n_max {
                let (p, center) = match name {
                    TableName::A => (cache.eulerian(n), n.saturating_sub(1)),
                    TableName::Atilde => (cache.binomial_eulerian(n)?, n),
                    TableName::D => (cache.derangement(n), n),
                    TableName::B => (cache.type_b_eulerian(n)?, n),
                    _ => (cache.type_b_derangement(n)?, n),
                };
                report.rows.push(row(n, 0, None, &p, symmetry_flags(&p, center)));
            }
        }
        TableName::P | TableName::Qnk | TableName::Dnk => {
            for n in 0..=n_max {
                for k in 0..=n {
                    let p = match name {
                        TableName::P => cache.pnk(n, k)?,
                        TableName::Qnk => cache.qnk(n, k)?,
                        _ => cache.dnk(n, k)?,
                    };
                    let golden = match name {
                        TableName::Qnk => golden::QNK.get(n).map(|r| r[k]),
                        TableName::Dnk => golden::DNK.get(n).map(|r| r[k]),
                        _ => None,
                    };
                    if let Some(g) = golden {
                        let expect: Poly = g.parse()?;
                        checks.equal(format!("printed table entry n={n}, k={k}"), &p, &expect);
                    }
                    report.rows.push(row(n, k, None, &p, String::new()));
                }
            }
        }
        TableName::Qstar => {
            for n in 0..=n_max {
                for k in 0..=n + 1 {
                    for j in 0..=n {
                        let p = cache.qnkj_star(n, k, j)?;
                        report.rows.push(row(n, k, Some(j), &p, String::new()));
                    }
                }
            }
        }
        TableName::GenericH | TableName::GenericL => {
            let seq = parse_seq(seq)?;
            if seq.len() <= n_max {
                return Err(Error::OutOfRange(format!(
                    "--n {n_max} needs {} polynomials in --seq, found {}",
                    n_max + 1,
                    seq.len()
                )));
            }
            let tri = generic_triangles(&seq[..=n_max])?;
            let grid = if name == TableName::GenericH { tri.h } else { tri.l };
            for (n, line) in grid.iter().enumerate() {
                for (k, p) in line.iter().enumerate() {
                    report.rows.push(row(n, k, None, p, String::new()));
                }
            }
        }
    }
    report.summary.push(format!("{} polynomials", report.rows.len()));
    report.add_checks(checks);
    Ok(report.finish())
}

pub fn cmd_check_conjecture(
    family: Option<Family>,
    ft_file: Option<&std::path::Path>,
    n: Option<usize>,
    part: Part,
    r: usize,
    budget: &Budget,
) -> eulerian_lab::Result<Report> {
    let cpart = match part {
        Part::A => ConjecturePart::A,
        Part::B => ConjecturePart::B,
    };
    let (label, verdict, flags) = if let Some(path) = ft_file {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut ft = FTriangle::from_json(&text)?;
        if let Some(n) = n {
            if n > ft.n {
                return Err(Error::OutOfRange(format!("--n {n} exceeds the file's n = {}", ft.n)));
            }
            ft = FTriangle::new(n, ft.f[..=n].to_vec())?;
        }
        let flags = ft.theta_flags()?;
        (format!("--ft-file {}", path.display()), ft.check_conjecture(cpart)?, Some(flags))
    } else {
        let family = family.expect("clap requires --family or --ft-file");
        let n = n.ok_or_else(|| Error::OutOfRange("--n is required with --family".into()))?;
        if family == Family::GenericBinomial {
            let seq: Vec<Poly> = (0..=n).map(Poly::one_plus_x_pow).collect();
            (format!("--family {}", family_name(family)), ConjectureVerdict::generic(&seq, cpart)?, None)
        } else {
            let ft = family_ftriangle(family, n, r, budget)?;
            let flags = ft.theta_flags()?;
            (format!("--family {}", family_name(family)), ft.check_conjecture(cpart)?, Some(flags))
        }
    };
    let mut report = Report::new(
        format!("check-conjecture {label} --n {} --part {}", verdict.n, if part == Part::A { "a" } else { "b" }),
        1,
    );
    for (k, p) in verdict.polys.iter().enumerate() {
        report.rows.push(row(verdict.n, k, None, p, String::new()));
    }
    let hypothesis = match verdict.hypothesis {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "not applicable (no triangulation)",
    };
    let conclusion = if verdict.conclusion { "holds" } else { "fails" };
    report.summary.push(format!("hypothesis (strong interlacing): {hypothesis}"));
    report.summary.push(format!("conclusion (interlacing sequence): {conclusion}"));
    report.summary.push(
        match (verdict.hypothesis, verdict.conclusion) {
            (Some(true), true) => "status: both hold",
            (Some(true), false) => "status: COUNTEREXAMPLE (hypothesis holds, conclusion fails)",
            (_, true) => "status: conclusion holds",
            (_, false) => "status: conclusion fails",
        }
        .to_string(),
    );
    if !verdict.conclusion {
        report.failures.push(format!(
            "sequence is not interlacing: not real-rooted at {:?}, failing pairs {:?}",
            verdict.sequence.not_real_rooted, verdict.sequence.interlacing_pairs_failed
        ));
    }
    report.details = Some(serde_json::json!({ "verdict": to_json(&verdict), "theta_flags": to_json(&flags) }));
    Ok(report.finish())
}

pub fn cmd_verify_identities(
    n: usize,
    family: Option<Family>,
    r: usize,
    cache: &mut FamilyCache,
    budget: &Budget,
) -> eulerian_lab::Result<Report> {
    let label = match family {
        Some(f) => format!(" --family {} --r {r}", family_name(f)),
        None => String::new(),
    };
    let mut report = Report::new(format!("verify-identities --n {n}{label}"), 1);
    report.add_checks(capture("algebraic identities", algebraic_suite(cache, n, budget))?);
    report.add_checks(capture("brute-force agreement", brute_force_suite(cache, n, budget))?);
    report.add_checks(capture("interlacing", interlacing_suite(cache, n))?);
    if let Some(family) = family {
        if family == Family::GenericBinomial {
            return Err(Error::OutOfRange("generic-binomial has no face-level identities".into()));
        }
        let mut ts = Vec::new();
        let start = if matches!(family, Family::Edgewise | Family::Colored) { 1 } else { 0 };
        for m in start..=n {
            ts.push(triangulation(family, m, r, budget)?);
        }
        report.add_checks(capture("face-level identities", geometry_suite(cache, &ts, budget))?);
        let ft = family_ftriangle(family, n, r, budget)?;
        report.add_checks(uniform_sampling_suite(&ft, 20, 1)?);
        if family == Family::Colored {
            for m in 1..=n {
                report.add_checks(colored_local_suite(m, r, budget)?);
            }
        }
    }
    Ok(report.finish())
}

pub fn cmd_sample_theorem1(
    n: usize,
    samples: usize,
    seed: u64,
    cache: &mut FamilyCache,
) -> eulerian_lab::Result<Report> {
    let mut report = Report::new(format!("sample-theorem1 --n {n} --samples {samples} --seed {seed}"), seed);
    let s = sample_theorem(cache, n, samples, seed)?;
    report.summary.push(format!("Eulerian transformation: {}/{} samples pass", s.eulerian_passed(), samples));
    report.summary.push(format!("derangement transformation: {}/{} samples pass", s.derangement_passed(), samples));
    for e in s.eulerian.iter().filter(|e| !e.passed()) {
        report.failures.push(format!("Eulerian sample {} fails: {}", e.index, e.image));
    }
    for d in s.derangement.iter().filter(|d| !d.passed()) {
        report.failures.push(format!("derangement sample {} fails: {}", d.index, d.image));
    }
    let mut details = serde_json::json!({ "samples": to_json(&s) });
    if n >= 2 {
        let three = sample_three_term(cache, n, samples, seed)?;
        let ok = three.iter().filter(|t| t.passed()).count();
        report.summary.push(format!("a A_n + b A_(n-1) + c A_(n-2): {ok}/{samples} samples pass"));
        for t in three.iter().filter(|t| !t.passed()) {
            report.failures.push(format!("three-term sample fails: {}", t.poly));
        }
        details["three_term"] = to_json(&three);
    }
    report.details = Some(details);
    Ok(report.finish())
}

pub fn cmd_dump_complex(
    family: Family,
    n: usize,
    r: usize,
    antiprism: bool,
    budget: &Budget,
) -> eulerian_lab::Result<Report> {
    let t = triangulation(family, n, r, budget)?;
    let mut report = Report::new(
        format!(
            "dump-complex --family {} --n {n} --r {r}{}",
            family_name(family),
            if antiprism { " --antiprism" } else { "" }
        ),
        1,
    );
    let (complex, carriers) = if antiprism {
        (t.antiprism_sphere(budget)?.complex, None)
    } else {
        (t.complex().clone(), Some(t.carriers().to_vec()))
    };
    report.summary.push(format!(
        "{} faces on {} vertices, face counts {:?}",
        complex.len(),
        complex.n_vertices(),
        complex.face_counts()
    ));
    report.details = Some(serde_json::json!({
        "n_vertices": complex.n_vertices(),
        "faces": complex.faces(),
        "carriers": carriers,
    }));
    report.body = Some(complex.dump());
    Ok(report.finish())
}

pub fn cmd_ft_from_family(family: Family, n: usize, r: usize, budget: &Budget) -> eulerian_lab::Result<Report> {
    let ft = family_ftriangle(family, n, r, budget)?;
    let mut report = Report::new(format!("ft-from-family --family {} --n {n} --r {r}", family_name(family)), 1);
    for (j, line) in ft.f.iter().enumerate() {
        for (i, &f) in line.iter().enumerate() {
            report.rows.push(Row {
                n: j,
                k: i,
                j: None,
                polynomial: f.to_string(),
                real_rooted: true,
                flags: String::new(),
            });
        }
    }
    report.body = Some(format!("{}\n", ft.to_json()));
    report.body_is_json = true;
    report.details = Some(to_json(&ft));
    Ok(report.finish())
}

/// Runs one parsed command. Errors are usage, budget or parse problems.
pub fn execute(cli: &Cli) -> eulerian_lab::Result<Report> {
    let budget = Budget::from_env()?;
    let mut cache = FamilyCache::new();
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Table { name, n, seq } => cmd_table(*name, *n, seq.as_deref(), &mut cache)?,
        Command::CheckConjecture { family, ft_file, n, part, r } => {
            cmd_check_conjecture(*family, ft_file.as_deref(), *n, *part, *r, &budget)?
        }
        Command::VerifyIdentities { n, family, r } => cmd_verify_identities(*n, *family, *r, &mut cache, &budget)?,
        Command::SampleTheorem1 { n, samples, seed } => cmd_sample_theorem1(*n, *samples, *seed, &mut cache)?,
        Command::DumpComplex { family, n, r, antiprism } => cmd_dump_complex(*family, *n, *r, *antiprism, &budget)?,
        Command::FtFromFamily { family, n, r } => cmd_ft_from_family(*family, *n, *r, &budget)?,
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn render_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if !report.rows.is_empty() {
        let with_j = report.rows.iter().any(|r| r.j.is_some());
        let mut header = vec!["n", "k"];
        if with_j {
            header.push("j");
        }
        header.extend(["polynomial", "real_rooted", "flags"]);
        w.write_record(&header).expect("in-memory write");
        for r in &report.rows {
            let mut rec = vec![r.n.to_string(), r.k.to_string()];
            if with_j {
                rec.push(r.j.map(|j| j.to_string()).unwrap_or_default());
            }
            rec.extend([r.polynomial.clone(), r.real_rooted.to_string(), r.flags.clone()]);
            w.write_record(&rec).expect("in-memory write");
        }
    } else {
        w.write_record(["check", "passed", "detail"]).expect("in-memory write");
        for c in report.checks.iter() {
            w.write_record([c.name.as_str(), &c.passed.to_string(), c.detail.as_str()]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn render_text(report: &Report) -> String {
    if let Some(body) = &report.body {
        return body.clone();
    }
    let mut out = format!("# {}\n# seed {}\n", report.command, report.seed);
    for r in &report.rows {
        let j = r.j.map(|j| format!(" j={j}")).unwrap_or_default();
        let flags = if r.flags.is_empty() { String::new() } else { format!("  [{}]", r.flags) };
        out.push_str(&format!("n={} k={}{j}: {}{flags}\n", r.n, r.k, r.polynomial));
    }
    for s in &report.summary {
        out.push_str(&format!("{s}\n"));
    }
    for f in &report.failures {
        out.push_str(&format!("FAIL {f}\n"));
    }
    if let Some(t) = report.timing_ms {
        out.push_str(&format!("time: {t} ms\n"));
    }
    out.push_str(if report.passed { "PASS\n" } else { "FAIL\n" });
    out
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            if let (true, Some(body)) = (report.body_is_json, &report.body) {
                return body.clone();
            }
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Text => render_text(report),
    }
}

/// Exit status for an error: internal cross-check failures count as verdict
/// failures, everything else as usage or budget errors.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::IdentityFailure(_) => 1,
        _ => 2,
    }
}
