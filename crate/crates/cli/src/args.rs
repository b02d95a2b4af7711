use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "satotate", version, about = "Frobenius statistics of genus 1 and 2 curves against Sato-Tate groups")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for Monte Carlo sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Prime bound.
    #[arg(long = "N", global = true)]
    pub bound: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count points on y^2 = f(x) at every good prime up to N and write JSONL records.
    ///
    /// c1 and c2 are the T and T^2 coefficients of the L-polynomial, so the
    /// Frobenius trace is -c1.
    Scan(ScanArgs),
    /// Empirical moments of a scan as CSV.
    Moments(MomentsArgs),
    /// Exact point-mass densities of a scan as CSV.
    Density(DensityArgs),
    /// Histogram of a1bar or a2bar as CSV.
    Hist(HistArgs),
    /// Rank the catalog groups against a scan.
    Classify(ClassifyArgs),
    /// Exact moments and point masses of every catalog group.
    Catalog(CatalogArgs),
    /// Enumerated trace moments at a fixed prime against the closed forms.
    Birch(BirchArgs),
    /// Factorization shapes of a polynomial against a permutation group.
    Chebotarev(ChebotarevArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Coefficients of f, highest degree first, e.g. "1,0,1,1" for x^3 + x + 1.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,

    /// Curve label, shown in the summary printed to stderr.
    #[arg(long)]
    pub label: Option<String>,

    /// TOML scan configuration; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSONL file written by `scan`.
    #[arg(long, short)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Largest exponent of each coefficient.
    #[arg(long, default_value_t = 8)]
    pub dmax: u32,

    /// Also emit prefix moments at prime bounds 2^10, 2^11, ...
    #[arg(long)]
    pub cutoffs: bool,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// a1 or a2; every tracked point mass when omitted.
    #[arg(long)]
    pub statistic: Option<String>,

    /// Integer target value.
    #[arg(long, allow_hyphen_values = true, requires = "statistic")]
    pub value: Option<i64>,
}

#[derive(Debug, Args)]
pub struct HistArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, default_value = "a1")]
    pub statistic: String,

    #[arg(long, default_value_t = 40)]
    pub bins: usize,

    /// Lower end of the range; defaults to the range of the statistic for the genus.
    #[arg(long, allow_hyphen_values = true)]
    pub min: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Largest weight d1 + 2 d2 of the listed moments.
    #[arg(long, default_value_t = 8)]
    pub weight: u32,

    /// List component-group rows instead of moments.
    #[arg(long)]
    pub components: bool,

    /// Add Monte Carlo estimates from this many samples per group.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BirchArgs {
    #[arg(long)]
    pub p: u64,

    /// Highest moment order, at most 10.
    #[arg(long, default_value_t = 10)]
    pub dmax: u32,
}

#[derive(Debug, Args)]
pub struct ChebotarevArgs {
    /// Coefficients of f, highest degree first, e.g. "1,0,0,-2" for x^3 - 2.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,

    /// Generators in cycle notation on the roots 1..n, e.g. "(1 2),(1 2 3)".
    #[arg(long, default_value = "")]
    pub group: String,
}
