use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trunc_poisson::{Rational, TruncParams, TwistParams};

use crate::CliError;

/// Largest exponent bound accepted anywhere; keeps dense exact elimination fast.
pub const MAX_EXPONENT: usize = 32;

#[derive(Debug, Parser)]
#[command(name = "trunc-poisson", version, about = "Poisson (co)homology of C[X,Y]/(X^a,Y^b) with {X,Y} = XY")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poisson cohomology HP^0, HP^1, HP^2 with representatives
    Cohomology(InstanceArgs),
    /// Poisson homology with coefficients in a twisted module
    Homology(HomologyArgs),
    /// Cup product table of HP^* against the fibre product reference
    Ring(InstanceArgs),
    /// Degreewise comparison of HP^k with twisted and untwisted homology
    Duality(InstanceArgs),
    /// One row of dimensions per (a, b) over a grid
    Sweep(SweepArgs),
    /// Run every structural check for one instance
    Verify(InstanceArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(short = 'a')]
    pub a: usize,
    #[arg(short = 'b')]
    pub b: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include explicit representative cochains
    #[arg(long)]
    pub reps: bool,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// trivial, nakayama, or an explicit pair "alpha,beta" of rationals
    #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
    pub twist: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Inclusive range such as 2..8, 2-8 or a single value
    #[arg(long = "a-range")]
    pub a_range: String,
    #[arg(long = "b-range")]
    pub b_range: String,
    #[arg(long, value_enum, default_value_t = Complex::Cohomology)]
    pub complex: Complex,
    /// Twist for homology sweeps: trivial, nakayama, or "alpha,beta"
    #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
    pub twist: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Complex {
    Cohomology,
    Homology,
}

impl Complex {
    pub fn name(self) -> &'static str {
        match self {
            Complex::Cohomology => "cohomology",
            Complex::Homology => "homology",
        }
    }
}

/// The twist selector, resolved per instance because the Nakayama twist
/// depends on `(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub enum TwistSelector {
    Trivial,
    Nakayama,
    Explicit(Rational, Rational),
}

impl TwistSelector {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "trivial" => Ok(TwistSelector::Trivial),
            "nakayama" => Ok(TwistSelector::Nakayama),
            other => {
                let bad = || CliError::Usage(format!("cannot parse twist {other:?}: expected trivial, nakayama or \"p/q,r/s\""));
                let (alpha, beta) = other.split_once(',').ok_or_else(bad)?;
                let alpha: Rational = alpha.trim().parse().map_err(|_| bad())?;
                let beta: Rational = beta.trim().parse().map_err(|_| bad())?;
                Ok(TwistSelector::Explicit(alpha, beta))
            }
        }
    }

    pub fn resolve(&self, p: TruncParams) -> TwistParams {
        match self {
            TwistSelector::Trivial => TwistParams::trivial(),
            TwistSelector::Nakayama => TwistParams::nakayama(p),
            TwistSelector::Explicit(alpha, beta) => TwistParams::new(alpha.clone(), beta.clone()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TwistSelector::Trivial => "trivial",
            TwistSelector::Nakayama => "nakayama",
            TwistSelector::Explicit(..) => "explicit",
        }
    }
}

pub fn instance_params(a: usize, b: usize) -> Result<TruncParams, CliError> {
    let p = TruncParams::new(a, b)
        .map_err(|_| CliError::Usage(format!("two integers a,b ≥ 2 are required, got a={a}, b={b}")))?;
    if a > MAX_EXPONENT || b > MAX_EXPONENT {
        return Err(CliError::Usage(format!(
            "resource limit: a and b must be at most {MAX_EXPONENT}, got a={a}, b={b}"
        )));
    }
    Ok(p)
}

pub fn parse_range(name: &str, s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse {name} {s:?}: expected lo..hi, lo-hi or a single integer"));
    let t = s.trim();
    let (lo, hi) = if let Some((lo, hi)) = t.split_once("..") {
        (lo, hi.strip_prefix('=').unwrap_or(hi))
    } else if let Some((lo, hi)) = t.split_once('-') {
        (lo, hi)
    } else {
        (t, t)
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Usage(format!("{name} {s:?} is empty")));
    }
    if lo < 2 {
        return Err(CliError::Usage(format!("{name} {s:?}: two integers a,b ≥ 2 are required")));
    }
    if hi > MAX_EXPONENT {
        return Err(CliError::Usage(format!(
            "resource limit: {name} {s:?} exceeds the maximum exponent {MAX_EXPONENT}"
        )));
    }
    Ok(lo..=hi)
}
