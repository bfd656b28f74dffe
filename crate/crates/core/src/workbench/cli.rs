//! Command-line front end. Exit codes: 0 ok, 1 property failure,
//! 2 parse or validation error, 3 size limit.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use super::analysis::{self, AnalysisOptions};
use super::format::{parse_unvalidated, AlgebraFile};
use super::report::{object, Format, InputInfo, Report};
use super::verify::{self, VerifyOptions};
use crate::error::Error;
use crate::isotest::{SearchOptions, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "reslie",
    version,
    about = "Restricted Lie algebras, their restricted enveloping algebras and invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub report_out: Option<PathBuf>,
    /// Stop the augmentation chain after this many powers.
    #[arg(long, global = true)]
    pub max_omega_power: Option<usize>,
    /// Node budget for isomorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub iso_budget: u64,
    /// Worker threads for catalog sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a file and check the restricted Lie algebra axioms.
    Validate { path: PathBuf },
    /// Series, filtrations, class identifiers and the fingerprint of u(L).
    Invariants { path: PathBuf },
    /// Cyclic decomposition and Fitting split of an abelian algebra.
    Decompose { path: PathBuf },
    /// Fingerprint comparison, isomorphism search and main quotient check.
    Compare { a: PathBuf, b: PathBuf },
    /// Run the full property battery over a directory of `.alg` files.
    Verify { catalog: PathBuf },
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::SizeLimit { .. } => EXIT_SIZE,
        _ => EXIT_INPUT,
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": e.to_string()});
    if let Error::Parse { line, column, .. } = e {
        v["line"] = json!(line);
        v["column"] = json!(column);
    }
    v
}

struct Loaded {
    info: InputInfo,
    file: AlgebraFile,
}

fn load(path: &Path) -> Result<Loaded, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let file = parse_unvalidated(&text)?;
    Ok(Loaded { info: InputInfo::new(&path.display().to_string(), &text, &file), file })
}

fn load_valid(path: &Path) -> Result<Loaded, Error> {
    let l = load(path)?;
    let report = l.file.algebra.validate();
    if !report.is_valid() {
        return Err(Error::Validation(report.describe(l.file.algebra.names())));
    }
    Ok(l)
}

/// Execute a parsed command line, returning the report text and exit code.
pub fn execute(cli: &Cli) -> (String, i32) {
    let start = Instant::now();
    let opts = AnalysisOptions {
        max_omega_power: cli.max_omega_power,
        iso: SearchOptions { budget: cli.iso_budget, ..SearchOptions::default() },
    };
    let mut report = Report {
        command: "",
        inputs: Vec::new(),
        body: Value::Null,
        failures: 0,
        candidate_violations: 0,
        elapsed_ms: 0,
    };
    let code = match &cli.command {
        Command::Validate { path } => {
            report.command = "validate";
            match load(path) {
                Ok(l) => {
                    let v = l.file.algebra.validate();
                    let names = l.file.algebra.names();
                    let violations: Vec<String> = v.violations.iter().map(|x| x.describe(names)).collect();
                    report.inputs.push(l.info);
                    report.body = json!({"valid": v.is_valid(), "violations": violations});
                    if v.is_valid() {
                        EXIT_OK
                    } else {
                        EXIT_INPUT
                    }
                }
                Err(e) => {
                    report.body = error_json(&e);
                    exit_for(&e)
                }
            }
        }
        Command::Invariants { path } => {
            report.command = "invariants";
            match load_valid(path).and_then(|l| Ok((analysis::invariants(&l.file.algebra, &opts)?, l.info))) {
                Ok((body, info)) => {
                    report.inputs.push(info);
                    report.body = body;
                    EXIT_OK
                }
                Err(e) => {
                    report.body = error_json(&e);
                    exit_for(&e)
                }
            }
        }
        Command::Decompose { path } => {
            report.command = "decompose";
            match load_valid(path).and_then(|l| Ok((analysis::decompose(&l.file.algebra)?, l.info))) {
                Ok(((body, checks), info)) => {
                    report.inputs.push(info);
                    report.failures = checks.iter().filter(|c| !c.passed).count();
                    report.body = object(vec![("decomposition", body), ("checks", json!(checks))]);
                    if report.failures > 0 {
                        EXIT_PROPERTY
                    } else {
                        EXIT_OK
                    }
                }
                Err(e) => {
                    report.body = error_json(&e);
                    exit_for(&e)
                }
            }
        }
        Command::Compare { a, b } => {
            report.command = "compare";
            let res = load_valid(a).and_then(|la| {
                let lb = load_valid(b)?;
                let out = analysis::compare(&la.file.algebra, &lb.file.algebra, &opts)?;
                Ok((out, la.info, lb.info))
            });
            match res {
                Ok(((body, checks, violations), ia, ib)) => {
                    report.inputs.push(ia);
                    report.inputs.push(ib);
                    report.failures = checks.iter().filter(|c| !c.passed).count();
                    report.candidate_violations = violations;
                    report.body = object(vec![("comparison", body), ("checks", json!(checks))]);
                    if report.failures > 0 || violations > 0 {
                        EXIT_PROPERTY
                    } else {
                        EXIT_OK
                    }
                }
                Err(e) => {
                    report.body = error_json(&e);
                    exit_for(&e)
                }
            }
        }
        Command::Verify { catalog } => {
            report.command = "verify";
            let vopts = VerifyOptions { iso: opts.iso, ..VerifyOptions::default() };
            let run =
                || verify::load_catalog(catalog).and_then(|entries| Ok((verify::run(&entries, &vopts)?, entries)));
            let res = match cli.jobs {
                Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
                    Ok(pool) => pool.install(run),
                    Err(e) => Err(Error::Malformed(e.to_string())),
                },
                None => run(),
            };
            match res {
                Ok((r, entries)) => {
                    report.inputs = entries.into_iter().map(|e| e.info).collect();
                    report.failures = r.failures;
                    report.candidate_violations = r.candidate_violations;
                    report.body = r.to_json();
                    if r.failures > 0 || r.candidate_violations > 0 {
                        EXIT_PROPERTY
                    } else {
                        EXIT_OK
                    }
                }
                Err(e) => {
                    report.body = error_json(&e);
                    exit_for(&e)
                }
            }
        }
    };
    report.elapsed_ms = start.elapsed().as_millis();
    (report.render(cli.format), code)
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let (text, code) = execute(&cli);
    match &cli.report_out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    code
}
