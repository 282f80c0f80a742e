//! Command-line arguments. Every subcommand's arguments double as the
//! experiment config embedded in its report, so they serialize losslessly.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "manin", version, about = "Rational point counts of bounded height on Fano varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Count points of bounded height on a variety or on its distinguished subspace.
    Count(CountArgs),
    /// Fit N(B) ~ c B^a (log B)^b to a count series.
    Fit(FitArgs),
    /// Counts on a variety, its subspaces and their complement, with fits.
    Saturation(SaturationArgs),
    /// Archimedean (Monte-Carlo) or p-adic local densities.
    Density(DensityArgs),
    /// Numerical criteria for linear subspaces on complete intersections.
    Fano(FanoArgs),
    /// Frobenius certificate for a genus-2 curve.
    Curve(CurveArgs),
    /// Point counts on the quadric bundle in P^3 x P^3.
    Bundle(BundleArgs),
    /// Re-run the config embedded in a report.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
pub struct Input {
    /// fermat:n:d, ct-quadrics, ct-quadrics-curve or paper-bundle.
    #[arg(long, conflicts_with = "variety")]
    pub builtin: Option<String>,
    /// Variety file (header `n=<int>`, then one form per line).
    #[arg(long)]
    pub variety: Option<PathBuf>,
    /// Contents of the variety file, filled in when the config is resolved.
    #[arg(skip)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety_text: Option<String>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
pub struct Bounds {
    /// A single height bound.
    #[arg(long = "B", conflicts_with = "grid")]
    #[serde(rename = "B")]
    pub b: Option<String>,
    /// Geometric grid B0:factor:steps.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct Output {
    /// Report format; csv unless the subcommand says otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Leave wall-clock columns empty, making reports byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct Enumeration {
    /// auto, naive, solve-last or sharded:<base>:<k>. `auto` picks
    /// solve-last when the last form is diagonal in the last variable.
    #[arg(long, default_value = "auto")]
    pub strategy: String,
    /// Worker threads; more than one shards the base strategy.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: Input,
    #[command(flatten)]
    #[serde(flatten)]
    pub bounds: Bounds,
    /// Deformation parameter λ of the height.
    #[arg(long, default_value = "1")]
    pub lambda: String,
    /// Height exponent; anticanonical by default.
    #[arg(long)]
    pub exponent: Option<u32>,
    /// Count on the builtin's distinguished linear subspace.
    #[arg(long)]
    pub subspace: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub enumeration: Enumeration,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct FitArgs {
    /// CSV with B and count columns; counts the variety when absent.
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// Contents of the series file, filled in when the config is resolved.
    #[arg(skip)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_text: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub input: Input,
    #[command(flatten)]
    #[serde(flatten)]
    pub bounds: Bounds,
    #[arg(long, default_value = "1")]
    pub lambda: String,
    #[arg(long)]
    pub exponent: Option<u32>,
    /// Power b of log B in the model.
    #[arg(long, default_value_t = 0)]
    pub log_power: u32,
    /// Number of smallest grid points left out of the fit.
    #[arg(long, default_value_t = 2)]
    pub drop_low: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub enumeration: Enumeration,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SaturationArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: Input,
    #[command(flatten)]
    #[serde(flatten)]
    pub bounds: Bounds,
    #[arg(long, default_value = "1")]
    pub lambda: String,
    #[arg(long)]
    pub exponent: Option<u32>,
    /// Linear subspace as semicolon-separated basis rows, e.g. "1,0,1;0,1,0".
    /// Repeatable; defaults to the builtin's distinguished subspace.
    #[arg(long = "linear")]
    pub linear: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub picard_rank: u32,
    #[arg(long, default_value_t = 2)]
    pub drop_low: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub enumeration: Enumeration,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct DensityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: Input,
    /// Comma-separated increasing λ values starting at 1.
    #[arg(long, default_value = "1")]
    pub lambda: String,
    /// Slab half-width; defaults to 1e-3 of the typical form size.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Compute the exact p-adic density at this prime instead.
    #[arg(long)]
    pub p: Option<u64>,
    /// Precision p^k of the p-adic density.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct FanoArgs {
    /// Scan C(d+r, r) against d(r+1) for 2 <= d, r <= max.
    #[arg(long = "scan-thm36")]
    pub scan_binom: bool,
    /// Scan the induction inequality for 1 <= s, e <= max.
    #[arg(long)]
    pub scan_induction: bool,
    #[arg(long, default_value_t = 30)]
    pub max: u64,
    /// Ambient dimension for a single criterion.
    #[arg(long)]
    pub n: Option<u64>,
    /// Comma-separated degrees.
    #[arg(long)]
    pub degrees: Option<String>,
    /// Subspace dimension; defaults to n - d.
    #[arg(long)]
    pub r: Option<u64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct CurveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: Input,
    /// Six comma-separated coefficients of f, leading first.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct BundleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: Input,
    #[command(flatten)]
    #[serde(flatten)]
    pub bounds: Bounds,
    /// Keep points on the accumulating loci.
    #[arg(long)]
    pub include_accumulating: bool,
    /// Count only the fiber over this x, e.g. "1,-1,1,-1".
    #[arg(long, allow_hyphen_values = true)]
    pub fiber: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct ReplayArgs {
    /// A CSV or JSON report written by this tool.
    pub report: PathBuf,
}
