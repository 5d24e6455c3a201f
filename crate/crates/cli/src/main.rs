//! `pnorm`: exact and asymptotic statistics of the partition norm (the
//! product of a partition's parts).
//!
//! Subcommands: `moments` (exact power sums and moments with the asymptotic
//! comparison), `max-norm` (closed-form maxima with witnesses), `constants`
//! (the residue-class growth constants), `dispersion` (variance and
//! dispersion ratio), and `verify` (cross-checks against brute-force
//! enumeration).
//!
//! Exit codes: 0 success, 1 I/O or computation failure, 2 usage error,
//! 3 verification mismatch.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pnorm_core::cache::SeriesCache;
use pnorm_core::Error;

use render::Format;

/// Environment variable naming the cache directory when `--cache-dir` is not
/// given.
const CACHE_DIR_ENV: &str = "PNORM_CACHE_DIR";

/// Cache directory used when neither the flag nor the environment names one.
const DEFAULT_CACHE_DIR: &str = "./.pnorm-cache";

#[derive(Parser)]
#[command(
    name = "pnorm",
    version,
    about = "Exact and asymptotic statistics of the partition norm",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct CacheArgs {
    /// Directory for on-disk series caching (overrides PNORM_CACHE_DIR;
    /// default ./.pnorm-cache)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Recompute everything; neither read nor write the cache
    #[arg(long, global = true)]
    no_cache: bool,
}

impl CacheArgs {
    fn series_cache(&self) -> SeriesCache {
        if self.no_cache {
            return SeriesCache::disabled();
        }
        let dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        SeriesCache::at(dir)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact norm power sums and moments, next to their asymptotic limits
    Moments(MomentsArgs),
    /// Maximum norm over partitions of n, with a witness partition
    MaxNorm(MaxNormArgs),
    /// The growth constants of the power sums, by residue class of n mod 3
    Constants(ConstantsArgs),
    /// Exact variance and squared dispersion ratio of the norm
    Dispersion(DispersionArgs),
    /// Cross-check the fast routes against brute-force enumeration
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MomentsArgs {
    /// Weight exponent (>= 1)
    #[arg(long)]
    ell: u32,

    /// Single partition size
    #[arg(long, conflicts_with_all = ["from", "to", "step"], required_unless_present = "from")]
    n: Option<u64>,

    /// Range start (inclusive; pairs with --to)
    #[arg(long, requires = "to")]
    from: Option<u64>,

    /// Range end (inclusive)
    #[arg(long, requires = "from")]
    to: Option<u64>,

    /// Range stride
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    step: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Significant digits for the decimal columns
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,

    /// Append the asymptotically predicted moment as an extra column
    /// (defined for n >= 2)
    #[arg(long)]
    predicted: bool,

    /// With --predicted: divide by the leading-order estimate of p(n)
    /// instead of the exact count, demonstrating the estimate's error
    #[arg(long, requires = "predicted")]
    estimated_count: bool,
}

#[derive(Args)]
struct MaxNormArgs {
    /// Single partition size
    #[arg(long, conflicts_with_all = ["from", "to"], required_unless_present = "from")]
    n: Option<u64>,

    /// Range start (inclusive; pairs with --to)
    #[arg(long, requires = "to")]
    from: Option<u64>,

    /// Range end (inclusive)
    #[arg(long, requires = "from")]
    to: Option<u64>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Largest weight exponent; rows cover 1..=ell-max
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    ell_max: u32,

    /// Decimal places each constant is rendered to
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct DispersionArgs {
    /// Range start (inclusive, >= 1)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    from: u64,

    /// Range end (inclusive)
    #[arg(long)]
    to: u64,

    /// Range stride
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    step: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Significant digits for the decimal columns
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n for the brute-force comparisons (enumeration cost caps
    /// this at 40)
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(0..=40))]
    nmax: u64,

    /// Largest weight exponent for the series comparison
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    ell_max: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = cli.cache.series_cache();
    let outcome = match &cli.command {
        Command::Moments(args) => commands::moments(args, &cache),
        Command::MaxNorm(args) => commands::max_norm(args),
        Command::Constants(args) => commands::constants(args),
        Command::Dispersion(args) => commands::dispersion(args, &cache),
        Command::Verify(args) => commands::verify(args, &cache),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("pnorm: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Stable mapping from error kinds to exit codes: bad requests are usage
/// errors (2, matching the argument parser's own exit code); everything else
/// that can go wrong — I/O, cache corruption, precision infeasibility,
/// failed numeric invariants — is an operational failure (1).
fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::InvalidRequest { .. } => 2,
        _ => 1,
    }
}
