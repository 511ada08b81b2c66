//! `entropy`: bound tables, certified bracket experiments, verification
//! suites, and serialization of the combinatorial witnesses.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 hypothesis/domain violation, 4 resource budget exceeded.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use entropy_numbers::Error;

#[derive(Parser)]
#[command(name = "entropy", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate closed-form bound tables over an (m, n) grid.
    Bounds(commands::bounds::BoundsArgs),
    /// Compute certified entropy-number brackets with witnesses.
    Estimate(commands::estimate::EstimateArgs),
    /// Run a verification suite and report pass/fail per grid point.
    Verify(commands::verify::VerifyArgs),
    /// Enumerate, count, or query the dominating weight sequences.
    Gamma(commands::gamma::GammaArgs),
    /// Build and emit a bounded-intersection set family.
    Codes(commands::codes::CodesArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Bounds(args) => commands::bounds::run(&args),
        Command::Estimate(args) => commands::estimate::run(&args),
        Command::Verify(args) => commands::verify::run(&args),
        Command::Gamma(args) => commands::gamma::run(&args),
        Command::Codes(args) => commands::codes::run(&args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) => 2,
        Error::Domain(_) => 3,
        Error::Resource(_) => 4,
    }
}
