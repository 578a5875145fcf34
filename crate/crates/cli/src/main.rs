//! Command-line front end: capacity-region curves, figure data,
//! entropy utilities, Williamson runs, Wehrl integrals and the
//! minimum-output-entropy searches.
//!
//! Exit codes: 0 success, 2 validation error, 3 numeric/convergence
//! error. Output files are byte-identical for identical configurations
//! and seeds.

mod commands;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bosoncast",
    about = "Bosonic broadcast-channel capacity regions and minimum-output-entropy searches",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one capacity-region boundary as CSV.
    Region(commands::RegionArgs),
    /// Reproduce the comparison-figure data sets.
    Figure(commands::FigureArgs),
    /// Evaluate the thermal entropy function and its inverse.
    Entropy(commands::EntropyArgs),
    /// Williamson-decompose a Gaussian state read from JSON.
    Williamson(commands::WilliamsonArgs),
    /// Numerical Wehrl entropy of a thermal or beam-splitter-output state.
    Wehrl(commands::WehrlArgs),
    /// Minimum-output-entropy conjecture harnesses.
    Conjecture(commands::ConjectureArgs),
    /// Numerical validation of the coherent-state rate region.
    Quadrature(commands::QuadratureArgs),
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("BOSONCAST_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }

    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Region(args) => commands::run_region(args),
        Command::Figure(args) => commands::run_figure(args),
        Command::Entropy(args) => commands::run_entropy(args),
        Command::Williamson(args) => commands::run_williamson(args),
        Command::Wehrl(args) => commands::run_wehrl(args),
        Command::Conjecture(args) => commands::run_conjecture(args),
        Command::Quadrature(args) => commands::run_quadrature(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_validation() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
