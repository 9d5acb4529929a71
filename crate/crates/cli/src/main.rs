//! Command-line front end for the curve toolkit: parse a JSON run
//! configuration (or inline flags), run one of the library pipelines, and
//! emit a machine-readable report plus a one-line human verdict on
//! standard error.
//!
//! Exit codes: 0 when the run's verification passes, 2 when the
//! computation finishes but the property under test fails (the report is
//! still written), 1 when the input could not be processed.

mod config;
mod emit;
mod error;
mod pipeline;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use config::{OutputFormat, Overrides};
use pipeline::Outcome;

#[derive(Parser)]
#[command(
    name = "mannheim",
    version,
    about = "Frenet frames and Mannheim partner curves for timelike curves in 4-dimensional Minkowski space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the Frenet frame and curvatures along a curve.
    Frenet(CommonArgs),
    /// Estimate the offset constant and test the Mannheim curvature relation.
    CheckMannheim(CommonArgs),
    /// Build and sample the partner curve c + beta N.
    Mate(CommonArgs),
    /// Integrate a curve of the parametric family and report its closed-form curvatures.
    Generate(CommonArgs),
    /// Run the full partner-pair verification.
    VerifyPair(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a JSON run configuration.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Number of samples; overrides the config file.
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// Offset constant; overrides the config file.
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Output format; overrides the config file.
    #[arg(long, value_enum, value_name = "FORMAT")]
    output: Option<OutputFormat>,
    /// Output path; standard output when omitted everywhere.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        // Usage errors are input errors; keep exit code 2 reserved for
        // falsified verifications.
        Err(e) => {
            let _ = e.print();
            return 1;
        }
    };
    let (name, args) = match &cli.command {
        Command::Frenet(a) => ("frenet", a),
        Command::CheckMannheim(a) => ("check-mannheim", a),
        Command::Mate(a) => ("mate", a),
        Command::Generate(a) => ("generate", a),
        Command::VerifyPair(a) => ("verify-pair", a),
    };
    let flags = Overrides {
        samples: args.samples,
        beta: args.beta,
        output: args.output,
        out: args.out.clone(),
    };
    match pipeline::execute(name, args.config.as_deref(), flags) {
        Ok(Outcome::Verified) => 0,
        Ok(Outcome::Falsified) => 2,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            1
        }
    }
}
