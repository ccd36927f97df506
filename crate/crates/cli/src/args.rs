use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use lacuna::suite::IDENTITIES;

#[derive(Debug, Parser)]
#[command(name = "lacuna", version, about = "Exact and numeric verification of lacunary Bernoulli identities")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance override for numeric checks.
    #[arg(long, global = true, value_parser = positive_f64)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a Bernoulli number as an exact fraction.
    Bernoulli(BernoulliArgs),
    /// Compute α_k^(N) by one route or by all of them.
    Alpha(AlphaArgs),
    /// Run a registered verification suite, or all of them.
    Verify(VerifyArgs),
    /// Lattice points, integral pairings and orbit tables.
    Lattice(LatticeArgs),
    /// Eisenstein series values and Weierstrass-product coefficients.
    Eisenstein(EisensteinArgs),
    /// Write figure data files.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BernoulliMethod {
    Oracle,
    Lacunary12,
}

#[derive(Debug, Args)]
pub struct BernoulliArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = BernoulliMethod::Oracle)]
    pub method: BernoulliMethod,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub big_n: u64,
    #[arg(long)]
    pub k: usize,
    /// series, signsum, doubling, orbit, closed, integral, barnes or all.
    #[arg(long, default_value = "series")]
    pub method: String,
}

fn identity_names() -> Vec<&'static str> {
    let mut v = IDENTITIES.to_vec();
    v.push("all");
    v
}

#[derive(Debug, Default, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(identity_names()))]
    pub identity: String,
    #[arg(long)]
    pub nmax: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// A field literal such as `1/3` or `zeta(12,1)`; a complex float for barnes_lacunary.
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long = "M")]
    pub big_m: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub variant: Vec<String>,
    #[arg(long)]
    pub printed_sign: bool,
    #[arg(long = "N", value_delimiter = ',')]
    pub big_n: Vec<u64>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    #[arg(long)]
    pub cases: Option<usize>,
    /// Nörlund orders, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub orders: Vec<i64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("selector").required(true).args(
    ["six_interval", "two_interval", "four_interval", "sign_lattice", "orbits"]
)))]
pub struct LatticeArgs {
    #[arg(long)]
    pub six_interval: bool,
    #[arg(long)]
    pub two_interval: bool,
    #[arg(long)]
    pub four_interval: bool,
    /// All 2^N sign-vector positions.
    #[arg(long, value_name = "N")]
    pub sign_lattice: Option<usize>,
    /// Orbit sizes, and the minimal-argument table when N is an odd prime.
    #[arg(long, value_name = "N")]
    pub orbits: Option<usize>,
    /// Also write the data to PATH (CSV when it ends in .csv).
    #[arg(long, value_name = "PATH")]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EisensteinArgs {
    /// Point in the upper half plane, e.g. `0.3+1.2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: String,
    /// Smallest weight is 2·kmin.
    #[arg(long, default_value_t = 2)]
    pub kmin: u32,
    /// Largest weight is 2·kmax.
    #[arg(long, default_value_t = 6)]
    pub kmax: u32,
    /// Also compute the product coefficients for this N.
    #[arg(long = "N")]
    pub big_n: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub nmax: usize,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// two_interval, four_interval, six_interval, sign_lattice(N) or all.
    pub figure: String,
    /// Destination file, or directory for `all`. Prints to stdout when omitted.
    pub path: Option<PathBuf>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}
