mod analyze;
mod corpus;
mod obstruct;
mod report;
mod volume;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Report;

/// Newton polygons, boundary slopes, surgery obstructions and hyperbolic
/// volume numerics for two-variable curve polynomials.
#[derive(Parser, Debug)]
#[command(name = "slopesmith", version)]
struct Cli {
    /// Largest root-of-unity order searched in the cyclic pipeline.
    #[arg(long, global = true, default_value_t = slopesmith::obstruction::DEFAULT_UNITY_BOUND)]
    bound: u64,
    /// Numerical tolerance; each command documents its default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the text report here and a JSON copy next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Newton polygon, slopes, norm ball and symmetries of a polynomial.
    Analyze(analyze::Args),
    /// Run an obstruction pipeline.
    #[command(subcommand)]
    Obstruct(obstruct::Args),
    /// Hyperbolic volume computations.
    #[command(subcommand)]
    Volume(volume::Args),
}

pub struct Globals {
    pub bound: u64,
    pub tol: Option<f64>,
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let globals = Globals { bound: cli.bound, tol: cli.tol, seed: cli.seed };
    let result = match &cli.command {
        Command::Analyze(args) => analyze::run(args, &globals),
        Command::Obstruct(args) => obstruct::run(args, &globals),
        Command::Volume(args) => volume::run(args, &globals),
    };
    let report: Report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.text);
    if let Some(path) = &cli.out {
        if let Err(e) = report.write(path) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code)
}
