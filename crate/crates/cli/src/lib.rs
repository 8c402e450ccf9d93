//! The `gallai` command line: argument model, report schema and dispatch.
//!
//! [`run`] writes everything to the supplied sink and returns the exit code,
//! so the binary is a thin wrapper and tests can drive commands in process.

pub mod report;
pub mod suites;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gallai::{
    check_n, classify_p4free, classify_p5free, compute_gr, construct::Construction,
    enumerate_p5free, evaluate_with, from_witness_json, lower_bound_witness, to_witness_json,
    verify_witness, ColoredComplete, Error, GrResult, TargetGraph,
};
use serde_json::json;

pub use report::{Query, Report};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for a bad check, a failed verification or a failed self-test.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for malformed input.
pub const EXIT_USAGE: i32 = 2;

/// Default `n_max` for `search`: the largest order the enumerator accepts.
pub const DEFAULT_N_MAX: usize = gallai::structure::MAX_ENUMERATION_ORDER;

/// Default seed for randomized suites.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "gallai",
    version,
    about = "Gallai-Ramsey numbers for a rainbow P5"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads; 0 or absent means machine parallelism.
    #[arg(long, global = true, env = "GALLAI_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate gr_k(P5:H) from the rule table.
    Eval {
        /// Target graph, e.g. K5, S4^1, PA6,5, K6-M or inline JSON. Repeatable.
        #[arg(long = "H", value_parser = parse_target, required_unless_present = "queries")]
        h: Vec<TargetGraph>,
        /// Color counts: a number, a range `4..8` or a comma list. Repeatable.
        #[arg(long, value_parser = parse_counts, required_unless_present = "queries")]
        k: Vec<Counts>,
        /// The absolute constant used by the pineapple Ramsey bound.
        #[arg(long)]
        c: Option<f64>,
        /// File of `H k` lines to evaluate in order instead of `--H`/`--k`.
        #[arg(long, conflicts_with_all = ["h", "k"])]
        queries: Option<PathBuf>,
    },
    /// Build and certify a lower-bound witness.
    Witness {
        #[arg(long = "H", value_parser = parse_target)]
        h: TargetGraph,
        #[arg(long)]
        k: Option<usize>,
        /// Construction by name, e.g. `F3` or `G4(a=5,t=5,k=5)`; default is the largest applicable one.
        #[arg(long)]
        construction: Option<String>,
    },
    /// Decide whether every rainbow-P5-free exact k-coloring of K_n has a monochromatic H.
    Check {
        #[arg(long = "H", value_parser = parse_target)]
        h: TargetGraph,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Compute gr_k(P5:H) by exhaustive search up to an order bound.
    Search {
        #[arg(long = "H", value_parser = parse_target)]
        h: TargetGraph,
        #[arg(long)]
        k: usize,
        #[arg(long = "n-max", default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
    },
    /// Report which structure-theorem cases a witness JSON coloring satisfies.
    Classify {
        /// Witness JSON file; `-` or absent reads standard input.
        input: Option<PathBuf>,
    },
    /// Stream every rainbow-P5-free exact k-coloring of K_n, one witness JSON per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Certify a witness JSON coloring against a target.
    Verify {
        #[arg(long = "H", value_parser = parse_target)]
        h: TargetGraph,
        /// Witness JSON file; `-` or absent reads standard input.
        input: Option<PathBuf>,
    },
    /// Run the oracle, construction-grid, structure and formula suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random colorings per structure suite.
        #[arg(long, default_value_t = 2_000)]
        samples: usize,
    },
}

fn parse_target(s: &str) -> Result<TargetGraph, Error> {
    s.parse()
}

/// A list of color counts given to `--k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts(pub Vec<usize>);

/// Parses `5`, `4..8` (inclusive) or `3,5,7`.
pub fn parse_counts(s: &str) -> Result<Counts, String> {
    let num = |p: &str| {
        p.trim()
            .parse::<usize>()
            .map_err(|_| format!("not a count: {p:?}"))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        return Ok(Counts((lo..=hi).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(Counts)
}

/// A failure that ends the command: the message goes to stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Unsupported(_)
            | Error::UnsupportedSize { .. }
            | Error::NotFound(_) => EXIT_USAGE,
            Error::InternalInconsistency(_) | Error::TheoremViolation(_) => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs `cli` on a pool sized by `--threads`, writing output to `out`.
///
/// Output is collected on the pool and written once the command finishes.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let threads = cli.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        })?;
    let mut buf = Vec::new();
    let outcome = pool.install(|| dispatch(cli, &mut buf));
    out.write_all(&buf)?;
    outcome
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Eval { h, k, c, queries } => {
            let list = match queries {
                Some(path) => read_queries(&std::fs::read_to_string(path)?)?,
                None => h
                    .iter()
                    .flat_map(|h| k.iter().flat_map(|c| &c.0).map(move |&k| (h.clone(), k)))
                    .collect(),
            };
            eval(&list, *c, fmt, out)
        }
        Command::Witness { h, k, construction } => {
            witness(h, *k, construction.as_deref(), fmt, out)
        }
        Command::Check { h, k, n } => check(h, *k, *n, fmt, out),
        Command::Search { h, k, n_max } => search(h, *k, *n_max, fmt, out),
        Command::Classify { input } => classify(&load(input.as_ref())?, fmt, out),
        Command::Enumerate { n, k } => enumerate(*n, *k, out),
        Command::Verify { h, input } => verify(h, &load(input.as_ref())?, fmt, out),
        Command::Selftest { seed, samples } => selftest(*seed, *samples, fmt, out),
    }
}

fn load(input: Option<&PathBuf>) -> Result<ColoredComplete, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(from_witness_json(&text)?)
}

/// Parses `H k` lines; blank lines and `#` comments are skipped.
pub fn read_queries(text: &str) -> Result<Vec<(TargetGraph, usize)>, Error> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (h, k) = line
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("query line {}: expected `H k`", i + 1)))?;
        let k = k
            .parse()
            .map_err(|_| Error::Parse(format!("query line {}: bad k {k:?}", i + 1)))?;
        out.push((h.trim().parse()?, k));
    }
    Ok(out)
}

/// One aligned table row for an evaluation.
pub fn eval_row(h: &TargetGraph, k: usize, r: &GrResult) -> String {
    format!("{:<10}{:>4}  {}", h.to_string(), k, r)
}

/// The table printed by `eval --format table`.
pub fn eval_table(rows: &[(TargetGraph, usize, GrResult)]) -> String {
    let mut s = format!("{:<10}{:>4}  {}\n", "H", "k", "gr_k(P5:H)");
    for (h, k, r) in rows {
        s.push_str(&eval_row(h, *k, r));
        s.push('\n');
    }
    s
}

fn eval(
    list: &[(TargetGraph, usize)],
    c: Option<f64>,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let mut rows = Vec::with_capacity(list.len());
    for (h, k) in list {
        rows.push((h.clone(), *k, evaluate_with(h, *k, c)?));
    }
    match fmt {
        Format::Json => {
            for (_, _, r) in &rows {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(r).expect("result serializes")
                )?;
            }
        }
        Format::Table => write!(out, "{}", eval_table(&rows))?,
    }
    Ok(EXIT_OK)
}

fn emit(report: &Report, fmt: Format, out: &mut dyn Write) -> io::Result<()> {
    match fmt {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Table => write!(out, "{}", report.to_table()),
    }
}

fn witness(
    h: &TargetGraph,
    k: Option<usize>,
    name: Option<&str>,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let start = Instant::now();
    let (construction, rule, cert) = match name {
        Some(name) => {
            let construction: Construction = name.parse()?;
            let coloring = construction.build()?;
            if let Some(k) = k {
                if coloring.k() != k {
                    return Err(Error::InvalidArgument(format!(
                        "{construction} uses {} colors, not {k}",
                        coloring.k()
                    ))
                    .into());
                }
            }
            (construction, None, verify_witness(&coloring, h))
        }
        None => {
            let k = k.ok_or_else(|| Failure {
                code: EXIT_USAGE,
                message: "witness needs --k or --construction".into(),
            })?;
            match lower_bound_witness(h, k)? {
                Some(w) => (w.construction, Some(w.rule), Ok(w.certificate)),
                None => {
                    let report = Report {
                        query: Query::new("witness").target(h).k(k),
                        status: "none".into(),
                        witness: None,
                        counts: Default::default(),
                        detail: None,
                        elapsed_ms: start.elapsed().as_millis() as u64,
                    };
                    emit(&report, fmt, out)?;
                    return Ok(EXIT_FAILURE);
                }
            }
        }
    };
    let k = cert
        .as_ref()
        .map(|c| c.k)
        .unwrap_or_else(|_| k.unwrap_or(0));
    let (status, witness, detail, code) = match cert {
        Ok(cert) => {
            let detail = json!({"construction": construction.to_string(), "rule": rule, "certificate": cert});
            ("certified", Some(cert.coloring.clone()), detail, EXIT_OK)
        }
        Err(f) => (
            "failed",
            None,
            json!({"construction": construction.to_string(), "failure": f.to_string()}),
            EXIT_FAILURE,
        ),
    };
    let mut counts = report::Tally::new();
    if let Some(w) = &witness {
        counts.insert("order".into(), w.n() as u64);
    }
    let report = Report {
        query: Query::new("witness").target(h).k(k),
        status: status.into(),
        witness,
        counts,
        detail: Some(detail),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    emit(&report, fmt, out)?;
    Ok(code)
}

/// The `check` report, without writing it.
pub fn check_report(h: &TargetGraph, k: usize, n: usize) -> Result<Report, Error> {
    let start = Instant::now();
    let outcome = check_n(h, k, n)?;
    let status = serde_json::to_value(outcome.status).expect("status serializes");
    let mut counts = report::Tally::new();
    counts.insert("examined".into(), outcome.examined as u64);
    Ok(Report {
        query: Query::new("check").target(h).k(k).n(n),
        status: status.as_str().expect("status is a string").to_string(),
        witness: outcome.witness,
        counts,
        detail: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn check(h: &TargetGraph, k: usize, n: usize, fmt: Format, out: &mut dyn Write) -> Outcome {
    let report = check_report(h, k, n)?;
    emit(&report, fmt, out)?;
    Ok(if report.status == "bad" {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn search(h: &TargetGraph, k: usize, n_max: usize, fmt: Format, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let r = compute_gr(h, k, n_max)?;
    let mut counts = report::Tally::new();
    counts.insert("orders".into(), r.checks.len() as u64);
    counts.insert(
        "examined".into(),
        r.checks.iter().map(|c| c.examined as u64).sum(),
    );
    let report = Report {
        query: Query::new("search").target(h).k(k).n_max(n_max),
        status: if r.value.is_some() {
            "found"
        } else {
            "inconclusive"
        }
        .into(),
        witness: r.witness.clone(),
        counts,
        detail: Some(
            json!({"value": r.value, "verified_through": r.verified_through, "checks": r.checks}),
        ),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    emit(&report, fmt, out)?;
    Ok(EXIT_OK)
}

fn classify(c: &ColoredComplete, fmt: Format, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let mut detail = serde_json::Map::new();
    let mut status = "rainbow-p5";
    if c.n() >= 5 {
        let report = classify_p5free(c)?;
        if !report.is_empty() {
            status = "p5-free";
        }
        detail.insert("cases".into(), json!(report.letters()));
        detail.insert("p5".into(), json!(report));
    } else {
        status = "p5-free";
    }
    if c.n() >= 4 {
        detail.insert("p4".into(), json!(classify_p4free(c)?));
    }
    let mut counts = report::Tally::new();
    counts.insert("n".into(), c.n() as u64);
    counts.insert("colors_used".into(), c.used_color_count() as u64);
    let report = Report {
        query: Query::new("classify").k(c.k()).n(c.n()),
        status: status.into(),
        witness: Some(c.clone()),
        counts,
        detail: Some(serde_json::Value::Object(detail)),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    emit(&report, fmt, out)?;
    Ok(EXIT_OK)
}

fn enumerate(n: usize, k: usize, out: &mut dyn Write) -> Outcome {
    for c in enumerate_p5free(n, k)? {
        writeln!(out, "{}", to_witness_json(&c))?;
    }
    Ok(EXIT_OK)
}

fn verify(h: &TargetGraph, c: &ColoredComplete, fmt: Format, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let (status, detail, code) = match verify_witness(c, h) {
        Ok(cert) => ("certified", json!({"certificate": cert}), EXIT_OK),
        Err(f) => ("failed", json!({"failure": f.to_string()}), EXIT_FAILURE),
    };
    let mut counts = report::Tally::new();
    counts.insert("order".into(), c.n() as u64);
    let report = Report {
        query: Query::new("verify").target(h).k(c.k()).n(c.n()),
        status: status.into(),
        witness: Some(c.clone()),
        counts,
        detail: Some(detail),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    emit(&report, fmt, out)?;
    Ok(code)
}

fn selftest(seed: u64, samples: usize, fmt: Format, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let results = suites::selftest(seed, samples);
    let passed = results.iter().all(|r| r.passed);
    let mut counts = report::Tally::new();
    counts.insert("suites".into(), results.len() as u64);
    counts.insert(
        "failed".into(),
        results.iter().filter(|r| !r.passed).count() as u64,
    );
    let report = Report {
        query: Query::new("selftest").seed(seed),
        status: if passed { "pass" } else { "fail" }.into(),
        witness: None,
        counts,
        detail: Some(json!(results)),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    match fmt {
        Format::Json => emit(&report, fmt, out)?,
        Format::Table => {
            for r in &results {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "status {} ({} ms)", report.status, report.elapsed_ms)?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
}
