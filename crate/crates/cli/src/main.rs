//! `heckeq`: verify identity suites, evaluate expressions, print string functions.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use heckeq_core::expr::eval_str;
use heckeq_core::string::{string_function, StringMethod};
use heckeq_core::suite::{exit_code, run_suite_with, Fault, RunOptions};
use heckeq_core::{emit_report, FracExp, ReportFormat, StringIndex};

#[derive(Parser)]
#[command(name = "heckeq", version, about = "Exact q-series identity verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite and report per-identity status.
    Verify {
        #[arg(long)]
        suite: String,
        /// Truncation order for every identity (default: each identity's own).
        #[arg(long, value_parser = parse_exp)]
        order: Option<FracExp>,
        /// Also write the JSON report to this path (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Perturb one left-hand coefficient: `ID@EXPONENT`. Repeatable.
        #[arg(long = "inject-fault", value_name = "ID@EXP")]
        faults: Vec<String>,
    },
    /// Evaluate an expression to a given order.
    Eval {
        expr: String,
        #[arg(long, value_parser = parse_exp)]
        order: FracExp,
        /// Number of leading terms to print.
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Print the string function C^N_{m,l}.
    String {
        #[arg(long)]
        level: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        l: i64,
        #[arg(long, value_enum, default_value_t = Method::Triple)]
        method: Method,
        #[arg(long, value_parser = parse_exp)]
        order: FracExp,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Triple,
    Hecke,
    Lattice,
}

fn parse_exp(s: &str) -> Result<FracExp, String> {
    s.parse()
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { suite, order, json, seed, faults } => {
            let faults = match faults.iter().map(|f| Fault::parse(f)).collect::<Result<Vec<_>, _>>() {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let reports = match run_suite_with(&suite, &RunOptions { order, seed, faults }) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let mut stdout = std::io::stdout().lock();
            let to_stdout = json.as_deref().is_some_and(|p| p.as_os_str() == "-");
            if !to_stdout {
                let _ = stdout.write_all(&emit_report(&reports, ReportFormat::Text));
            }
            if let Some(path) = json {
                let bytes = emit_report(&reports, ReportFormat::Json);
                let written = if to_stdout { stdout.write_all(&bytes) } else { std::fs::write(&path, bytes) };
                if let Err(e) = written {
                    return fail(format!("writing {}: {e}", path.display()));
                }
            }
            ExitCode::from(exit_code(&reports) as u8)
        }
        Command::Eval { expr, order, terms } => match eval_str(&expr, order) {
            Ok(s) => {
                println!("{}", s.display_terms(terms));
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::String { level, m, l, method, order, terms } => {
            let method = match method {
                Method::Triple => StringMethod::Triple,
                Method::Hecke => StringMethod::Hecke,
                Method::Lattice => StringMethod::Lattice,
            };
            match StringIndex::new(level, m, l).and_then(|i| string_function(&i, method, order)) {
                Ok(s) => {
                    println!("{}", s.display_terms(terms));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}
