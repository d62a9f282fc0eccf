use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

/// Invariants of D(q,p) hypersurface singularities, each checked against an
/// independent computation.
#[derive(Debug, Parser)]
#[command(name = "dqp", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Include per-section wall times (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Milnor fiber, Lê numbers, polar multiplicities and Euler obstructions.
    Invariants(InvariantsArgs),
    /// Class systems for the Lê cycles of the minimal germ and their intersection numbers.
    Lecycles(LecyclesArgs),
    /// Intersection number of bidegree classes on Pⁿ × Pᵐ.
    Chow(ChowArgs),
    /// Integral closure membership and reductions of monomial ideals.
    Closure(ClosureArgs),
    /// Exhaustive point count of {f = target} over a prime field.
    Count(CountArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub q: i64,
    #[arg(long)]
    pub p: i64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct LecyclesArgs {
    #[arg(long)]
    pub p: i64,
    /// Only the cycle of dimension q − i.
    #[arg(long)]
    pub i: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChowAlgorithm {
    Ring,
    Fulton,
    Both,
}

#[derive(Debug, Args)]
pub struct ChowArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Semicolon-separated `a,b` pairs, e.g. "1,1;1,1;0,2".
    #[arg(long, allow_hyphen_values = true)]
    pub bidegrees: String,
    #[arg(long, value_enum, default_value_t = ChowAlgorithm::Both)]
    pub algorithm: ChowAlgorithm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClosureMode {
    Newton,
    Valuative,
    Both,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// Generators, e.g. "y1^2, y2^2".
    #[arg(long)]
    pub ideal: String,
    /// Monomial to test for integral dependence, e.g. "y1*y2".
    #[arg(long)]
    pub monomial: Option<String>,
    /// Test whether --ideal is a reduction of this ideal.
    #[arg(long)]
    pub full: Option<String>,
    #[arg(long, value_enum, default_value_t = ClosureMode::Both)]
    pub mode: ClosureMode,
    /// Number of variables (defaults to the largest index used).
    #[arg(long)]
    pub vars: Option<usize>,
    /// Seed for the random weight vectors of the valuative test.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long, default_value_t = 0)]
    pub q1: usize,
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value_t = 1)]
    pub target: u64,
    /// Maximum number of points to enumerate.
    #[arg(long, env = "DQP_BUDGET")]
    pub budget: Option<u128>,
    /// Worker threads (defaults to available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    All,
    Core,
    Chow,
    Closure,
    Ffcount,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Scope::All)]
    pub scope: Scope,
    /// Largest matrix size swept by the suites.
    #[arg(long, default_value_t = 6)]
    pub pmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
