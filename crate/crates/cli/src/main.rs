mod commands;
mod fmt;
mod spec;
mod verify;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

/// Relative-entropy ratio bounds and capacities of binary-input channels
/// with noisy causal state information.
#[derive(Parser)]
#[command(name = "entropy-ray", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scalar function (zeta, xi, rho, T, Ta, gamma).
    Eval {
        /// Function name: one of zeta, xi, rho, T, Ta, gamma.
        expr: String,
        /// Numeric arguments (or a JSON file path for gamma).
        args: Vec<String>,
    },
    /// Emit the reference two-state system with crossover delta as JSON.
    BuildExample {
        /// Crossover probability, in (0, 0.5).
        #[arg(long)]
        delta: f64,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Sweep the erasure side-channel family over a grid of epsilon and
    /// write capacities to CSV.
    Sweep {
        /// Path to a system JSON file.
        #[arg(long)]
        system: std::path::PathBuf,
        /// Grid specification start:stop:step.
        #[arg(long, default_value = "0:1:0.01")]
        grid: String,
        /// Output CSV path.
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Reproduce the below-threshold capacity gap witness.
    GapWitness {
        /// Crossover probability, in (0, 0.5).
        #[arg(long)]
        delta: f64,
        /// Distance below the threshold; the erasure parameter is T - iota.
        #[arg(long)]
        iota: f64,
    },
    /// Run a named property-verification suite.
    Verify {
        /// Suite: theorem1, theorem2, appendixA, channels, threshold, all.
        suite: String,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count.
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        /// Optional side-channel JSON file checked against the threshold
        /// suite's plateau property.
        #[arg(long)]
        side_file: Option<std::path::PathBuf>,
    },
}

/// CLI failure carrying the process exit code:
/// 2 for usage/domain errors, 3 for I/O errors.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 3 }
    }
}

impl From<entropy_ray_core::Error> for CliError {
    fn from(e: entropy_ray_core::Error) -> Self {
        CliError::domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval { expr, args } => commands::eval(&expr, &args),
        Command::BuildExample { delta, out } => commands::build_example(delta, out.as_deref()),
        Command::Sweep { system, grid, out } => commands::sweep(&system, &grid, &out),
        Command::GapWitness { delta, iota } => commands::gap_witness(delta, iota),
        Command::Verify { suite, seed, n, side_file } => {
            match verify::run(&suite, seed, n, side_file.as_deref()) {
                Ok(true) => Ok(()),
                Ok(false) => return ExitCode::from(1),
                Err(e) => Err(e),
            }
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
