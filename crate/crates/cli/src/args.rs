use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dbe_core::numeric::Rational;

#[derive(Debug, Parser)]
#[command(name = "dbe", version, about = "Construct de Bruijn–Erdős curves and certify their length")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a curve and print its JSON description.
    Construct(CurveArgs),
    /// Exact upper and certified lower bounds on the length of a curve.
    Certify(CertifyArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Emit plot data.
    Emit(EmitArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Ambient dimension.
    #[arg(long, default_value_t = 3)]
    pub n: usize,

    /// Riesz–Nagy weight of the singular component.
    #[arg(long, default_value = "1/4")]
    pub a: Rational,

    /// Number of staircases in each full-measure mapper.
    #[arg(long = "M", default_value_t = 4)]
    pub mappers: usize,

    /// Value of the constant last coordinate.
    #[arg(long, default_value = "1/2")]
    pub alpha: Rational,

    /// Nesting depth of each staircase.
    #[arg(long, default_value_t = dbe_core::curve::DEFAULT_STAIRCASE_DEPTH)]
    pub staircase_depth: u32,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub curve: CurveArgs,

    /// Curve JSON produced by `construct`; overrides the curve flags.
    #[arg(long)]
    pub spec: Option<PathBuf>,

    /// Polyline depth for the lower bound.
    #[arg(long, default_value_t = 14)]
    pub d: u32,

    /// Working precision in bits.
    #[arg(long, env = "DBE_PRECISION", default_value_t = 64)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Pairwise de Bruijn–Erdős check on a sample of the curve.
    #[arg(long)]
    pub dbe: bool,

    /// Exhaustive search for the largest unique-intersection family on [n].
    #[arg(long)]
    pub family: bool,

    /// Randomized lemma suites.
    #[arg(long)]
    pub lemmas: bool,

    #[command(flatten)]
    pub curve: CurveArgs,

    /// Sample depth for --dbe (2^d + 1 points).
    #[arg(long, default_value_t = 8)]
    pub d: u32,

    /// Trials per lemma for --lemmas.
    #[arg(long, default_value_t = 500)]
    pub trials: usize,

    /// Seed for --lemmas.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[group(id = "series", required = true, multiple = false)]
pub struct EmitSelect {
    /// Curve points on the dyadic grid of depth d.
    #[arg(long, group = "series")]
    pub samples: bool,

    /// Polyline length for each depth in the d range.
    #[arg(long, group = "series")]
    pub length_series: bool,

    /// Box counts for each m in the m range.
    #[arg(long, group = "series")]
    pub boxcount: bool,
}

#[derive(Debug, Args)]
pub struct EmitArgs {
    #[command(flatten)]
    pub select: EmitSelect,

    #[command(flatten)]
    pub curve: CurveArgs,

    #[arg(long)]
    pub spec: Option<PathBuf>,

    /// Depth, or depth range `lo..hi`.
    #[arg(long, default_value = "8")]
    pub d: DepthRange,

    /// Box-count levels `lo..hi`.
    #[arg(long = "m", default_value = "4..10")]
    pub levels: DepthRange,

    #[arg(long, env = "DBE_PRECISION", default_value_t = 64)]
    pub precision: u32,
}

/// `k` or the inclusive range `lo..hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthRange {
    pub lo: u32,
    pub hi: u32,
}

impl DepthRange {
    pub fn single(&self) -> Option<u32> {
        (self.lo == self.hi).then_some(self.lo)
    }

    pub fn range(&self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for DepthRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad depth {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let k = num(s)?;
                (k, k)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(DepthRange { lo, hi })
    }
}
