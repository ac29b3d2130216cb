use std::path::PathBuf;

use abcrad::search::{PrimeRequirement, SearchBounds};
use abcrad::{FactorBudget, Natural};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "abcrad", version, about = "Searches and verifies ABC triples built from 2^m, p^n and q^r")]
pub struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true, env = "ABCRAD_WORKERS")]
    pub workers: Option<usize>,

    /// Trial-division bound of the factorization budget.
    #[arg(long, global = true, default_value_t = FactorBudget::default().trial_bound)]
    pub trial_bound: u64,

    /// Pollard rho iterations per split before giving up.
    #[arg(long, global = true, default_value_t = FactorBudget::default().rho_iterations)]
    pub rho_iterations: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one or all family searches and stream the records.
    Search(SearchArgs),
    /// Recompute every tabulated ε₀ and check each row is found by its search.
    VerifyTable(VerifyArgs),
    /// Radical and quality of a single triple.
    Quality(QualityArgs),
    /// Solutions of y² − 2x² = −1 from the recurrence.
    Pell(PellArgs),
    /// Run a lemma or scan suite.
    Props(PropsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    TwoPrime,
    A,
    B,
    C,
    Chain,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 64)]
    pub max_m: u32,
    #[arg(long, default_value_t = 64)]
    pub max_n: u32,
    #[arg(long, default_value_t = 64)]
    pub max_r: u32,
    /// Every triple member stays below 2^max_c_bits.
    #[arg(long, default_value_t = 128)]
    pub max_c_bits: u32,
    #[arg(long, default_value = "one", value_name = "both|one|none")]
    pub require_mf: PrimeRequirement,
    #[arg(long, default_value_t = 61)]
    pub mersenne_exp_cap: u32,
    #[arg(long, default_value_t = 4)]
    pub fermat_w_cap: u32,
    /// Comma-separated odd primes replacing the Mersenne/Fermat pool.
    #[arg(long, value_delimiter = ',')]
    pub pool: Option<Vec<Natural>>,
    /// Extra anchor primes for `--require-mf none`.
    #[arg(long, default_value_t = 1000)]
    pub free_prime_cap: u64,
}

impl Cli {
    pub fn budget(&self) -> FactorBudget {
        FactorBudget { trial_bound: self.trial_bound, rho_iterations: self.rho_iterations }
    }
}

impl BoundsArgs {
    pub fn to_bounds(&self, budget: FactorBudget) -> SearchBounds {
        SearchBounds {
            max_m: self.max_m,
            max_n: self.max_n,
            max_r: self.max_r,
            max_c_bits: self.max_c_bits,
            prime_requirement: self.require_mf,
            mersenne_exp_cap: self.mersenne_exp_cap,
            fermat_w_cap: self.fermat_w_cap,
            prime_pool: self.pool.clone(),
            free_prime_cap: self.free_prime_cap,
            budget,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub family: FamilyArg,
    #[command(flatten)]
    pub bounds: BoundsArgs,
    /// Largest chain index y.
    #[arg(long, default_value_t = 8)]
    pub max_y: u32,
    /// Recorded in the run configuration; the searches draw no random numbers.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// CSV report destination (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct QualityArgs {
    pub a: Natural,
    pub b: Natural,
    pub c: Natural,
    /// Decimal digits of ε₀.
    #[arg(long, default_value_t = 4)]
    pub precision: u32,
}

#[derive(Debug, Clone, Args)]
pub struct PellArgs {
    /// Largest odd index g.
    #[arg(long, default_value_t = 9)]
    pub max_g: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gcd,
    Preamble,
    Power,
    Zsigmondy,
    Pell,
    Nagell,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct PropsArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Random gcd-lemma instances.
    #[arg(long, default_value_t = 1000)]
    pub iters: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampled instances for the ε = 1 scan in the preamble suite.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Exclusive bound on P in the preamble suite.
    #[arg(long, default_value_t = 10_000)]
    pub max_p: u64,
    /// Largest m for the perfect-power suite.
    #[arg(long, default_value_t = 1000)]
    pub max_m: u32,
    /// Largest exponent for the zsigmondy suite.
    #[arg(long, default_value_t = 40)]
    pub max_k: u32,
    #[arg(long, default_value_t = 9)]
    pub max_g: u64,
    #[arg(long, default_value_t = 1000)]
    pub max_x: u64,
    #[arg(long, default_value_t = 20)]
    pub max_n: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything a search run needs besides the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub bounds: SearchBounds,
    pub seed: u64,
    pub workers: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: &SearchArgs, workers: usize, budget: FactorBudget) -> Self {
        RunConfig {
            bounds: args.bounds.to_bounds(budget),
            seed: args.seed,
            workers,
            output_path: args.out.clone(),
            format: args.format,
        }
    }
}
