//! Monte Carlo test for whether unknowns can be eliminated: a relation among the
//! kept variables exists exactly when the projection forgetting the eliminated
//! ones is not dominant, which a random fiber detects with known probability.

use std::time::Instant;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, Pow, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::BoundReport;
use crate::diffring::DiffSystem;
use crate::elim::{compute_bound, ElimConfig, ElimError};
use crate::groebner::{contains_one_with, Cutoff, GbError, GbLimits};
use crate::polycore::{Polynomial, DEFAULT_PRIME, Q};

/// Name of the generator recorded alongside every seed.
pub const GENERATOR: &str = "ChaCha8";

/// Sample sets whose size needs more bits than this are refused.
pub const MAX_SAMPLE_BITS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RandError {
    #[error("probability {0} is not strictly between 0 and 1")]
    ProbabilityOutOfRange(String),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("sample set would need {0} bits")]
    SampleTooLarge(u64),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Elim(#[from] ElimError),
}

fn check_probability(p: &Q) -> Result<(), RandError> {
    if !p.is_positive() || *p >= Q::one() {
        return Err(RandError::ProbabilityOutOfRange(p.to_string()));
    }
    Ok(())
}

/// `ceil(d^(q+r) / (1 - p))`.
pub fn sample_size(d: u64, q: u64, r: u64, p: &Q) -> Result<BigUint, RandError> {
    check_probability(p)?;
    if d == 0 {
        return Err(RandError::ZeroDegree);
    }
    let bits = (64 - d.leading_zeros() as u64).saturating_mul(q.saturating_add(r));
    if bits > MAX_SAMPLE_BITS {
        return Err(RandError::SampleTooLarge(bits));
    }
    let exp = u32::try_from(q + r).map_err(|_| RandError::SampleTooLarge(bits))?;
    let power = Pow::pow(BigInt::from(d), exp);
    let quotient = Q::from_integer(power) / (Q::one() - p);
    Ok(quotient.ceil().to_integer().magnitude().clone())
}

/// How the specialized system was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    /// Decided modulo a prime; only a negative answer is ever left unconfirmed.
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplePoint {
    pub var: String,
    pub value: String,
}

/// One dominance test at one random point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomizedVerdict {
    pub elimination_possible: bool,
    /// Probability floor `p`, as an exact fraction.
    pub p: String,
    pub sample_size: String,
    pub point: Vec<SamplePoint>,
    pub seed: u64,
    /// Stream of the generator used for this draw.
    pub stream: u64,
    pub generator: &'static str,
    pub d: u64,
    pub q: u64,
    pub r: u64,
    /// Whether 1 lies in the specialized ideal.
    pub unit_in_ideal: bool,
    pub method: Method,
}

/// Options for deciding specialized systems.
#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// Decide modulo a large prime first, confirming positive answers over Q.
    pub modular_prefilter: bool,
    pub limits: GbLimits,
}

/// Specializes `y_vars` at a random point of `S^r`, `S = {0, ..., |S|-1}`, and
/// reports elimination as possible iff the fiber is empty.
pub fn dominance_check(
    f: &[Polynomial],
    x_vars: &[usize],
    y_vars: &[usize],
    p: &Q,
    seed: u64,
    options: &CheckOptions,
) -> Result<RandomizedVerdict, RandError> {
    let d = f
        .iter()
        .filter_map(|g| g.total_degree().finite())
        .max()
        .unwrap_or(0)
        .max(1) as u64;
    dominance_at(f, x_vars.len() as u64, y_vars, d, p, seed, 0, options)
}

#[allow(clippy::too_many_arguments)]
fn dominance_at(
    f: &[Polynomial],
    q: u64,
    y_vars: &[usize],
    d: u64,
    p: &Q,
    seed: u64,
    stream: u64,
    options: &CheckOptions,
) -> Result<RandomizedVerdict, RandError> {
    let r = y_vars.len() as u64;
    let size = sample_size(d, q, r, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let values: Vec<(usize, BigUint)> = y_vars
        .iter()
        .map(|&v| (v, rng.gen_biguint_below(&size)))
        .collect();
    let subst: Vec<(usize, Q)> = values
        .iter()
        .map(|(v, a)| (*v, Q::from_integer(BigInt::from(a.clone()))))
        .collect();
    let g: Vec<Polynomial> = f.iter().map(|e| e.substitute(&subst)).collect();
    let (unit, method) = decide_unit(&g, options)?;
    let point = match f.first() {
        Some(e) => values
            .iter()
            .map(|(v, a)| SamplePoint {
                var: e.registry().render(*v),
                value: a.to_string(),
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(RandomizedVerdict {
        elimination_possible: unit,
        p: p.to_string(),
        sample_size: size.to_string(),
        point,
        seed,
        stream,
        generator: GENERATOR,
        d,
        q,
        r,
        unit_in_ideal: unit,
        method,
    })
}

fn decide_unit(g: &[Polynomial], options: &CheckOptions) -> Result<(bool, Method), GbError> {
    if options.modular_prefilter {
        if let Some(gm) = g.iter().map(|e| e.to_modular(DEFAULT_PRIME)).collect::<Option<Vec<_>>>() {
            if !contains_one_with(&gm, &options.limits)? {
                return Ok((false, Method::Modular));
            }
        }
    }
    Ok((contains_one_with(g, &options.limits)?, Method::Exact))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DaeVerdict {
    /// A relation exists; found at the reported depth.
    Possible,
    /// No relation up to the bound, with probability at least `p`.
    Impossible,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct DaeCheckReport {
    pub verdict: DaeVerdict,
    pub depth: Option<u32>,
    pub p: String,
    pub seed: u64,
    pub generator: &'static str,
    pub bound: BoundReport,
    pub per_depth: Vec<RandomizedVerdict>,
    pub cutoff: Option<Cutoff>,
    pub augmented: Vec<String>,
}

/// Runs [`dominance_check`] on the prolongations at depths `0..=B`, stopping at
/// the first depth where elimination is possible. Depth `N` draws from stream `N`.
pub fn randomized_dae_check(
    sys: &DiffSystem,
    p: &Q,
    seed: u64,
    config: &ElimConfig,
    modular_prefilter: bool,
) -> Result<DaeCheckReport, RandError> {
    check_probability(p)?;
    let limits = config.limits(Instant::now());
    let (sys, added) = if config.augment {
        sys.augment_derivatives()
    } else {
        (sys.clone(), Vec::new())
    };
    let (bound, _) = compute_bound(&sys, config, &limits)?;
    let b = u32::try_from(&bound.b).ok();
    let last = match (b, config.max_depth) {
        (Some(b), Some(m)) => b.min(m),
        (Some(b), None) => b,
        (None, Some(m)) => m,
        (None, None) => return Err(ElimError::UnboundedDepth(bound.b.to_string()).into()),
    };
    let options = CheckOptions {
        modular_prefilter,
        limits,
    };
    let d = sys
        .equations()
        .iter()
        .filter_map(|e| e.total_degree().finite())
        .max()
        .unwrap_or(0)
        .max(1) as u64;
    let mut report = DaeCheckReport {
        verdict: DaeVerdict::Impossible,
        depth: None,
        p: p.to_string(),
        seed,
        generator: GENERATOR,
        bound,
        per_depth: Vec::new(),
        cutoff: None,
        augmented: added.iter().map(|e| e.to_string()).collect(),
    };
    if sys.equations().is_empty() {
        return Ok(report);
    }
    for depth in 0..=last {
        let prolonged = sys.prolong(depth);
        let y = prolonged.y_variables();
        let q = prolonged
            .equations()
            .iter()
            .flat_map(|e| e.variables())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|v| y.binary_search(v).is_err())
            .count() as u64;
        match dominance_at(prolonged.equations(), q, &y, d, p, seed, u64::from(depth), &options) {
            Ok(v) => {
                let possible = v.elimination_possible;
                report.per_depth.push(v);
                if possible {
                    report.verdict = DaeVerdict::Possible;
                    report.depth = Some(depth);
                    return Ok(report);
                }
            }
            Err(RandError::Gb(GbError::Cutoff { cutoff, .. })) => {
                report.verdict = DaeVerdict::Inconclusive;
                report.cutoff = Some(cutoff);
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    }
    if b.is_none_or(|b| last < b) {
        report.verdict = DaeVerdict::Inconclusive;
    }
    Ok(report)
}
