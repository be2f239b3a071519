//! Batch front-end for the parafermion verification suites.
//!
//! Every command writes one JSON report (keys sorted) to `--out` or standard
//! output. Exit status: 0 when every check passed, 2 when the run completed
//! and found violations, 1 on usage, input or resource errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "parafermion",
    version,
    about = "Reflection positivity checks for parafermion chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Order of the generators (c^n = 1).
    #[arg(long, global = true)]
    pub n: Option<u32>,

    /// Number of sites; must be even.
    #[arg(long = "L", global = true)]
    pub sites: Option<usize>,

    /// Power of the generator for `counterexample`.
    #[arg(long, global = true, default_value_t = 1)]
    pub j: u32,

    /// Smallest Trotter step count.
    #[arg(long, global = true, default_value_t = 32)]
    pub k: u32,

    /// Random observables drawn per check.
    #[arg(long, global = true, default_value_t = 500)]
    pub samples: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Relative tolerance for positivity and equality checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// JSON Hamiltonian spec; `--n` and `--L` override its fields.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,

    /// Report destination; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Family for `families`: 1 (n = k³), 2 (n = 2k²) or 3 (n = k², k odd).
    #[arg(long, global = true)]
    pub family: Option<u32>,

    /// Family parameter k.
    #[arg(long, global = true)]
    pub kparam: Option<u32>,

    /// Family parameter j'.
    #[arg(long, global = true)]
    pub jprime: Option<u32>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Check the order, commutation and unitarity relations of the generators.
    VerifyRelations,
    /// Sample the positivity functional of a spec.
    RpCheck,
    /// Gram matrix of the monomial observables on the minus half.
    Gram,
    /// Lie–Trotter error at k, 2k, 4k and 8k steps.
    Trotter,
    /// Schwarz-type bounds with the spec's own split.
    Bounds,
    /// f(c^j) for the single crossing bond.
    Counterexample,
    /// f(c^j) on the positive (n, j) families.
    Families,
    /// Build the clock chain and run the positivity checks on it.
    Baxter,
    /// Expand H and e^{-H} in the monomial basis.
    Decompose,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = commands::emit(&outcome.report, cli.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
