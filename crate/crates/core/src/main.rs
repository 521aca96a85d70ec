//! Command-line front end: compute one polynomial, or run a verification suite.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hopf_tutte::error::{Error, Result};
use hopf_tutte::harness::{compute, parse_object, run_suite, PolyKind};

#[derive(Parser)]
#[command(
    name = "hopf-tutte",
    version,
    about = "Canonical Tutte polynomials of minor systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a polynomial of the object described by a JSON record.
    Compute {
        #[arg(long)]
        object: PathBuf,
        /// tutte, lv, br2, br3, br-partitioned, krushkal, penrose2 or penrose.
        #[arg(long)]
        polynomial: String,
        /// Evaluation point for `penrose`.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Run a verification suite over the enumerated corpus.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_elements: usize,
        #[arg(long)]
        json_report: Option<PathBuf>,
    },
}

fn emit(text: &str) -> Result<()> {
    std::io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|e| Error::Io(format!("stdout: {e}")))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compute {
            object,
            polynomial,
            lambda,
        } => {
            let text = std::fs::read_to_string(&object)
                .map_err(|e| Error::Io(format!("{}: {e}", object.display())))?;
            let obj = parse_object(&text)?;
            let out = compute(&obj, polynomial.parse::<PolyKind>()?, lambda.as_deref())?;
            let json = serde_json::to_string(&out.terms).expect("records serialize");
            emit(&format!("{}\n{json}\n", out.text))?;
            Ok(true)
        }
        Command::Verify {
            suite,
            max_elements,
            json_report,
        } => {
            let report = run_suite(&suite, max_elements)?;
            emit(&report.to_text())?;
            if let Some(path) = json_report {
                std::fs::write(&path, report.to_json())
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
