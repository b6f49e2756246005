use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use declab::cli::{
    parse_space, run_acceptance, run_check, CheckKind, CheckSpec, Report, Status, DEFAULT_DEGREE,
    DEFAULT_LEVELS,
};
use declab::sset::format::print_sset;
use declab::sset::map::Budget;

/// Verification CLI for finite simplicial sets and the ordinal-sum
/// adjunctions (décalage, its left adjoint, and the total simplicial set).
#[derive(Parser)]
#[command(name = "declab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one named check against a space expression.
    Check {
        /// One of: split-uniqueness, split-fork, pi0-ident, two-route-sigma,
        /// counit, comparison, unit-homology, retraction, adjunction.
        name: String,
        /// Space expression, e.g. "quotient(simplex(1),boundary(1))".
        #[arg(long)]
        space: Option<String>,
        /// Level cutoff N for naturality and levelwise checks.
        #[arg(long, default_value_t = DEFAULT_LEVELS)]
        levels: usize,
        /// Homology degree cutoff D.
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a space in the SSET v1 text format.
    Print {
        #[arg(long)]
        space: String,
    },
    /// Run a predefined suite ("acceptance").
    Suite {
        name: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(report: &Report, json: bool, out: Option<PathBuf>) -> ExitCode {
    let body = if json { report.to_json() } else { report.render_text() };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            use std::io::Write;
            // tolerate a closed pipe (e.g. piping into `head`)
            let _ = std::io::stdout().write_all(body.as_bytes());
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::default();
    match cli.command {
        Command::Check { name, space, levels, degree, json, out } => {
            let Some(kind) = CheckKind::parse(&name) else {
                eprintln!(
                    "error: unknown check {name:?}; known checks: {}",
                    CheckKind::ALL.map(|k| k.name()).join(", ")
                );
                return ExitCode::from(1);
            };
            let spec = CheckSpec { kind, space, levels, degree };
            let report = Report::new(vec![run_check(&spec, budget)]);
            emit(&report, json, out)
        }
        Command::Print { space } => match parse_space(&space) {
            Ok(x) => {
                print!("{}", print_sset(&x));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Suite { name, json, out } => {
            if name != "acceptance" {
                eprintln!("error: unknown suite {name:?}; available: acceptance");
                return ExitCode::from(1);
            }
            let grouped = run_acceptance(budget);
            if !json && out.is_none() {
                use std::io::Write;
                let mut stdout = std::io::stdout();
                for (criterion, results) in &grouped {
                    let ok = results.iter().all(|r| r.status == Status::Pass);
                    let millis: u128 = results.iter().map(|r| r.millis).sum();
                    let line =
                        format!("{} {criterion} [{millis} ms]\n", if ok { "PASS" } else { "FAIL" });
                    let _ = stdout.write_all(line.as_bytes());
                }
            }
            let report =
                Report::new(grouped.into_iter().flat_map(|(_, results)| results).collect());
            emit(&report, json, out)
        }
    }
}
