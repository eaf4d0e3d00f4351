//! `congruence-lab`: formula queries, classification, surface construction
//! and trisecant-order verification from the command line.
//!
//! Exit codes: 0 success or match, 1 verification mismatch, 2 usage error,
//! 3 construction failure.

pub mod expr;
mod invariants;
mod report;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::{consolidate, Summary, SummaryEntry};
pub use verify::{build_model, expected_order, VerifyFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "congruence-lab", version, about = "First-order congruences of lines in P^4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Prime modulus of the base field.
    #[arg(long, default_value_t = 101)]
    pub q: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random points to sample.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Worker threads for the search (default: all cores).
    #[arg(long, env = "CONGRUENCE_LAB_THREADS")]
    pub threads: Option<usize>,
    /// Write the JSON report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of a summary.
    #[arg(long)]
    pub json: bool,
    /// Record wall time in the report (breaks byte-for-byte reproducibility).
    #[arg(long)]
    pub timing: bool,
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a product of Schubert symbols, e.g. "s(1,0)^6 @ n=4".
    Schubert {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the numerical types of fundamental surfaces in P^4.
    Classify {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one formula, e.g. "au 10 6 0" or "3ple 5 1 5 1 n=5".
    Invariants {
        name: String,
        #[arg(allow_hyphen_values = true, num_args = 0..)]
        args: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Build a surface and estimate the order of its trisecant congruence.
    Verify {
        #[arg(value_enum)]
        family: VerifyFamily,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Merge verification reports and compare them across primes.
    Report {
        paths: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_out(path: &Option<PathBuf>, body: &str) -> Result<(), Output> {
    if let Some(p) = path {
        std::fs::write(p, body)
            .map_err(|e| Output::fail(EXIT_USAGE, format!("cannot write {}: {e}\n", p.display())))?;
    }
    Ok(())
}

fn cmd_schubert(expr_text: &str, json: bool) -> Output {
    match expr::evaluate(expr_text) {
        Err(e) => Output::fail(EXIT_USAGE, format!("{e}\n")),
        Ok(ev) => {
            if json {
                let terms: Vec<serde_json::Value> = ev
                    .class
                    .terms()
                    .map(|(s, c)| serde_json::json!({ "a": s.a(), "b": s.b(), "coefficient": c.to_string() }))
                    .collect();
                let doc = serde_json::json!({
                    "n": ev.class.n(),
                    "expansion": ev.class.to_string(),
                    "terms": terms,
                    "intersection_number": ev.intersection_number,
                });
                Output::ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
            } else {
                let mut s = format!("{}\n", ev.class);
                if let Some(k) = ev.intersection_number {
                    s.push_str(&format!("intersection number: {k}\n"));
                }
                Output::ok(s)
            }
        }
    }
}

fn cmd_classify(json: bool, out: &Option<PathBuf>) -> Output {
    let c = congruence_core::invariants::classify_p4_audited();
    let body = serde_json::to_string_pretty(&c).unwrap() + "\n";
    if let Err(e) = write_out(out, &body) {
        return e;
    }
    if json {
        return Output::ok(body);
    }
    let mut s = String::from("   m   h   k   a   x  pi\n");
    for r in &c.rows {
        let r = r.row;
        s.push_str(&format!(
            "{:>4}{:>4}{:>4}{:>4}{:>4}{:>4}\n",
            r.m, r.h, r.k, r.a, r.x, r.pi
        ));
    }
    s.push_str("\naudit\n");
    for r in &c.rows {
        let rules: Vec<String> = r.audit.iter().map(|a| format!("{}: {}", a.field, a.rule)).collect();
        s.push_str(&format!("  (m={}, h={}): {}\n", r.row.m, r.row.h, rules.join("; ")));
    }
    s.push_str("\nexcluded\n");
    for e in &c.exclusions {
        match e.h {
            Some(h) => s.push_str(&format!("  m={m}, h={h}: {}\n", e.reason, m = e.m)),
            None => s.push_str(&format!("  m={}: {}\n", e.m, e.reason)),
        }
    }
    Output::ok(s)
}

/// Runs the tool on `args` (including the program name) and captures output.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output::ok(text)
            } else {
                Output::fail(code, text)
            };
        }
    };
    match cli.command {
        Command::Schubert { expr, json } => cmd_schubert(&expr, json),
        Command::Classify { json, out } => cmd_classify(json, &out),
        Command::Invariants { name, args, json } => {
            let trailing_json = args.iter().any(|a| a == "--json");
            let args: Vec<String> = args.into_iter().filter(|a| a != "--json").collect();
            invariants::cmd_invariants(&name, &args, json || trailing_json)
        }
        Command::Verify { family, config } => verify::cmd_verify(family, &config),
        Command::Report { paths, json, out } => report::cmd_report(&paths, json, &out),
    }
}
