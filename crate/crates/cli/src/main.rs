//! `psolv`: analyze permutation groups at a prime and run the invariant suites.
//!
//! Exit codes: 0 success, 1 mathematical violation or internal inconsistency,
//! 2 input or contract error, 3 capacity exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use psolv::catalog::{catalog_entry, catalog_get, CATALOG_NAMES};
use psolv::report::{analyze, filtration_report};
use psolv::textfmt::load_group_file;
use psolv::verify::{verify, Suite, VerifyOptions};
use psolv::{GroupError, PermGroup, Prime};

#[derive(Parser)]
#[command(
    name = "psolv",
    version,
    about = "Mod-p cohomology and p-length invariants of permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of a group at a prime.
    Analyze {
        #[command(flatten)]
        source: GroupSource,
        #[arg(short, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        json: bool,
    },
    /// Run invariant suites over the catalog.
    Verify {
        /// theorem-a, theorem-b, lemma1, tate, tate-cor, prop4, huppert,
        /// oracle, lengths, kernel, or all.
        suite: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(short, value_parser = parse_prime)]
        p: Option<Prime>,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the built-in group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the residual chain, the refined series and the p-perfect filtration.
    Filtration {
        #[command(flatten)]
        source: GroupSource,
        #[arg(short, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List catalog names with orders.
    List,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// Catalog name, e.g. S4 or 2.S5.
    name: Option<String>,
    /// Group text file (`degree n` then `gen (1 2)(3 4)` lines).
    #[arg(long)]
    file: Option<PathBuf>,
}

impl GroupSource {
    fn load(&self) -> Result<(String, PermGroup), GroupError> {
        match (&self.name, &self.file) {
            (Some(name), _) => Ok((name.clone(), catalog_get(name)?)),
            (None, Some(path)) => Ok((path.display().to_string(), load_group_file(path)?)),
            (None, None) => unreachable!("clap requires a group source"),
        }
    }
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let n: u64 = s
        .parse()
        .map_err(|_| format!("{s:?} is not a positive integer"))?;
    Prime::new(n).map_err(|e| e.to_string())
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn exit_code(err: &GroupError) -> u8 {
    match err {
        GroupError::Input(_) | GroupError::Contract(_) => 2,
        GroupError::Capacity { .. } => 3,
        GroupError::Internal(_) => 1,
    }
}

fn run(cli: Cli) -> Result<u8, GroupError> {
    match cli.command {
        Command::Analyze { source, p, json } => {
            let (name, g) = source.load()?;
            let report = analyze(&name, &g, p)?;
            if json {
                emit(&(report.to_json() + "\n"));
            } else {
                emit(&report.to_table());
            }
            let violations = report.violations();
            for v in &violations {
                eprintln!("violation: {v}");
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Verify {
            suite,
            group,
            p,
            json,
        } => {
            let opts = VerifyOptions {
                suites: Suite::parse_selection(&suite)?,
                group,
                prime: p,
            };
            let report = verify(&opts)?;
            if json {
                emit(&(report.to_json() + "\n"));
            } else {
                emit(&report.to_text());
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            for name in CATALOG_NAMES {
                let entry = catalog_entry(name)?;
                emit(&format!(
                    "{:<8} {:>5}  {}\n",
                    entry.name, entry.expected_order, entry.description
                ));
            }
            Ok(0)
        }
        Command::Filtration { source, p, json } => {
            let (name, g) = source.load()?;
            let report = filtration_report(&name, &g, p)?;
            if json {
                emit(&(report.to_json() + "\n"));
            } else {
                emit(&report.to_text());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("psolv: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
