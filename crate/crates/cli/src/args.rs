use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use diffelim::bounds::TheoremChoice;
use diffelim::polycore::Q;

#[derive(Parser, Debug)]
#[command(name = "diffelim", version, about = "Eliminate unknowns from differential-algebraic systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the prolongation bound.
    Bound {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Prolong and eliminate up to the bound.
    Eliminate {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether elimination is possible.
    CheckElim {
        file: PathBuf,
        /// Use the Monte Carlo dominance test.
        #[arg(long)]
        randomized: bool,
        /// Required success probability, as a decimal or a fraction.
        #[arg(short = 'p', long = "prob", default_value = "0.99")]
        p: String,
        /// Decide specialized systems modulo a large prime first.
        #[arg(long)]
        modular: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build the lower-bound witness of a given degree.
    Witness {
        #[arg(short = 'd', long = "degree")]
        degree: u64,
        /// Also search for the least inconsistent prolongation depth.
        #[arg(long)]
        search_depth: Option<u32>,
        /// Wall-clock budget for the search, in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TheoremArg {
    Auto,
    T1,
    T2,
    T3,
    Tighter,
}

impl From<TheoremArg> for TheoremChoice {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Auto => TheoremChoice::Auto,
            TheoremArg::T1 => TheoremChoice::T1,
            TheoremArg::T2 => TheoremChoice::T2,
            TheoremArg::T3 => TheoremChoice::T3,
            TheoremArg::Tighter => TheoremChoice::Tighter,
        }
    }
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, value_enum, default_value = "auto")]
    pub theorem: TheoremArg,
    /// Treat the ideal as radical without checking.
    #[arg(long)]
    pub radical: bool,
    /// Random specializations used to estimate dimension and degree.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    /// Seed for every random choice; drawn and recorded when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_depth: Option<u32>,
    /// Add derivatives of equations that stay within the current orders.
    #[arg(long)]
    pub augment_derivatives: bool,
    #[arg(long)]
    pub max_pairs: Option<u64>,
    /// Largest coefficient size, in bits, before giving up.
    #[arg(long)]
    pub max_bits: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    pub timings: bool,
}

/// Reads `0.99`, `99/100` or `1e-2`-free decimals exactly.
pub fn parse_probability(s: &str) -> Result<Q, String> {
    let bad = || format!("cannot read probability `{s}`");
    let t = s.trim();
    let q = if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Q::new(n, d)
    } else {
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        let digits = |p: &str| p.chars().all(|c| c.is_ascii_digit());
        if int.is_empty() && frac.is_empty() || !digits(int) || !digits(frac) {
            return Err(bad());
        }
        let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
        let frac_val: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        Q::from_integer(int) + Q::new(frac_val, scale)
    };
    if !q.is_positive() || q >= Q::one() {
        return Err(format!("probability `{s}` must lie strictly between 0 and 1"));
    }
    Ok(q)
}
