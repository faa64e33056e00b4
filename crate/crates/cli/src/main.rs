//! `expsum-lab`: experiments on complete exponential sums.

mod cache;
mod commands;
mod config;
mod exit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "expsum-lab", version, about = "Complete exponential sums, genericity and moment experiments")]
pub struct Cli {
    /// Configuration file of `key=value` lines; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for cached sum tables.
    #[arg(long, global = true, env = "EXPSUM_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore any configured cache directory.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Genericity report for one polynomial (JSON).
    Classify(ClassifyArgs),
    /// Per-prime moments with oracles and references.
    Moments(MomentsArgs),
    /// Fourth-moment dichotomy scan.
    Dichotomy(DichotomyArgs),
    /// Prime-averaged second moment against (kappa - 1) log log x.
    Shao(ShaoArgs),
    /// Cross moment of several polynomials at one prime.
    Cross(CrossArgs),
    /// Sums over squarefree moduli q <= x.
    Sweep(SweepArgs),
    /// Group trace moments: exact references and Monte Carlo.
    Rmt(RmtArgs),
    /// Self-test of tables, twisted extension and moment oracles.
    Oracle(OracleArgs),
    /// Inspect or prune the table cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Coefficients as a JSON array, constant term first.
    #[arg(long)]
    pub poly: Option<String>,
    /// Certificate primes: `lo..hi` or a comma-separated list.
    #[arg(long)]
    pub primes: Option<String>,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub primes: Option<String>,
    /// Comma-separated exponents of |W| (1 or even).
    #[arg(long)]
    pub exponents: Option<String>,
}

#[derive(Args, Debug)]
pub struct DichotomyArgs {
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub primes: Option<String>,
    /// Multiple of p^(-1/2) in the flags.
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ShaoArgs {
    #[arg(long)]
    pub poly: Option<String>,
    /// Comma-separated cut-offs x.
    #[arg(long)]
    pub x: Option<String>,
    /// Use this kappa instead of estimating it.
    #[arg(long)]
    pub kappa: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CrossArgs {
    /// Repeat once per polynomial.
    #[arg(long)]
    pub poly: Vec<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub poly: Vec<String>,
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub x: Option<u64>,
    #[arg(long)]
    pub cap: Option<u64>,
    /// Comma-separated grid points.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Args, Debug)]
pub struct RmtArgs {
    /// `su` or `usp`.
    #[arg(long, default_value = "su")]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Largest k in E|Tr g|^(2k).
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum CacheCommand {
    /// List cached tables.
    List,
    /// Remove entries by polynomial hash prefix, or all of them.
    Evict {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        hash: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Recompute checksums and evict corrupt entries.
    Verify,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<expsum::Error>().is_some_and(|e| matches!(e, expsum::Error::CapExceeded { .. })) {
                eprintln!("hint: raise --cap; table memory grows roughly like x^2 / log x bytes");
            }
            ExitCode::from(exit::code_for(&err) as u8)
        }
    }
}
