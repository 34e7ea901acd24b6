//! `bernstein`: evaluate simplex Bernstein polynomials, check their
//! identities, and tabulate operator convergence.
//!
//! Exit codes: 0 on success, 1 when an identity check finds a
//! counterexample, 2 on invalid input.

mod commands;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simplex_bernstein::identities::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "bernstein",
    version,
    about = "Bernstein polynomials on the k-dimensional simplex"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; defaults to csv for `table` and json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for random test points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate B_{v,n}(x), or its q-deformation when --q is given.
    Eval(EvalArgs),
    /// Verify the decomposition and symmetry identities.
    Check(CheckArgs),
    /// Sup-error of the Bernstein operator over a lattice, per degree.
    Table(TableArgs),
    /// Compare the generating series partial sum with its closed form.
    Genfun(GenfunArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: u32,
    /// Multi-index, e.g. `1,0`.
    #[arg(long)]
    pub v: String,
    /// Point, e.g. `0.5,0.25` or `1/2,1/4` (fractions evaluate exactly).
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum WeightArg {
    #[default]
    Stated,
    Mutated,
    Unit,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Decomposition identity and its m = 1 recurrence.
    #[arg(long)]
    pub thm1: bool,
    /// Axis and permutation symmetries.
    #[arg(long)]
    pub thm2: bool,
    /// q-deformed decomposition identity.
    #[arg(long)]
    pub thm3: bool,
    /// q-deformed symmetries.
    #[arg(long)]
    pub thm4: bool,
    /// Every suite (also the default when no suite is selected).
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 5)]
    pub n_max: u32,
    /// Comma-separated q values in (0, 1]; fractions also get an exact pass.
    #[arg(long, default_value = "1/4,1/2,3/4")]
    pub q: String,
    /// Random rational points per case, on top of the boundary points.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    /// Convolution weight in the decomposition suites.
    #[arg(long, value_enum, default_value_t = WeightArg::Stated)]
    pub weight: WeightArg,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Bundled function: const, coord, prod, exp, cone.
    #[arg(long = "f")]
    pub function: String,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Comma-separated ascending degrees.
    #[arg(long)]
    pub degrees: String,
    /// Lattice spacing 1/M.
    #[arg(long, default_value = "1/20")]
    pub grid_step: String,
}

#[derive(Debug, Args)]
pub struct GenfunArgs {
    /// Dimension; inferred from --v when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub t: String,
    /// Last degree N in the partial sum.
    #[arg(long, default_value_t = simplex_bernstein::basis::DEFAULT_TRUNCATION)]
    pub truncation: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(err) = emit(cli.output.as_ref(), &outcome.text) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            let msg = format!("{err:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}
