//! The prolong-then-eliminate pipeline.
//!
//! Geometry over the field generated by the kept unknowns (dimension, degree,
//! radicality, equidimensionality) is estimated by specializing every kept
//! derivative and parameter at random integers. Relations themselves are always
//! found exactly, with block elimination orders over all derivative variables.

mod geometry;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::{select_bound, BoundError, BoundInputs, BoundReport, Theorem, TheoremChoice};
use crate::diffring::DiffSystem;
use crate::groebner::{
    buchberger_with, contains_one_with, elimination_ideal_with, Cutoff, GbError, GbLimits, GbStats,
};
use crate::polycore::{MonomialOrder, Polynomial};

pub use geometry::{dim_over_param_field, x_window, DimEstimate, RadicalStatus, TrialSummary};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElimError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("bound {0} is too large to iterate; pass a maximum depth")]
    UnboundedDepth(String),
}

/// Knobs shared by the bound computation and the depth loop.
#[derive(Clone, Debug)]
pub struct ElimConfig {
    pub theorem: TheoremChoice,
    /// Treat the ideal as radical without checking.
    pub assume_radical: bool,
    pub trials: u32,
    pub seed: u64,
    /// Specialized values are drawn from `1..=specialization_range`.
    pub specialization_range: u64,
    pub max_depth: Option<u32>,
    pub augment: bool,
    pub max_pairs: Option<u64>,
    pub max_coeff_bits: Option<u64>,
    pub timeout: Option<Duration>,
}

impl Default for ElimConfig {
    fn default() -> Self {
        ElimConfig {
            theorem: TheoremChoice::Auto,
            assume_radical: false,
            trials: 3,
            seed: 0,
            specialization_range: 1 << 15,
            max_depth: None,
            augment: false,
            max_pairs: None,
            max_coeff_bits: None,
            timeout: None,
        }
    }
}

impl ElimConfig {
    /// Limits with the wall-clock budget counted from `start`.
    pub fn limits(&self, start: Instant) -> GbLimits {
        GbLimits {
            max_pairs: self.max_pairs,
            max_coeff_bits: self.max_coeff_bits,
            deadline: self.timeout.map(|t| start + t),
        }
    }
}

/// Degrees `d` (max) and `d0` (min) of the equations in the given variables.
pub fn degree_range(equations: &[Polynomial], vars: &[usize]) -> (u64, u64) {
    let degs: Vec<u64> = equations
        .iter()
        .filter_map(|e| e.degree_in(vars).finite())
        .map(u64::from)
        .collect();
    (
        degs.iter().copied().max().unwrap_or(0),
        degs.iter().copied().min().unwrap_or(0),
    )
}

/// Outcome of bound selection for a system.
#[derive(Clone, Debug, Serialize)]
pub struct BoundOutcome {
    pub bound: BoundReport,
    pub geometry: DimEstimate,
    /// Equations added by derivative augmentation, rendered.
    pub augmented: Vec<String>,
}

fn trivial_report(inputs: BoundInputs, b: u64, note: &str) -> BoundReport {
    BoundReport {
        theorem: Theorem::T2,
        codim: inputs.abs_alpha,
        inputs,
        profile: Vec::new(),
        mu: None,
        b: BigUint::from(b),
        notes: vec![note.to_string()],
    }
}

/// Computes the prolongation bound for `sys` (already augmented if desired).
pub fn compute_bound(sys: &DiffSystem, config: &ElimConfig, limits: &GbLimits) -> Result<(BoundReport, DimEstimate), ElimError> {
    if config.trials == 0 {
        return Err(ElimError::NoTrials);
    }
    let geo = dim_over_param_field(sys, config, limits)?;
    let window = x_window(sys);
    let (d, d0) = degree_range(sys.equations(), &window);
    let alpha = sys.order_tuple();
    let beta = sys.beta_tuple();
    let params_present = sys
        .param_names()
        .iter()
        .filter(|p| {
            sys.y_variables()
                .iter()
                .any(|&v| &sys.registry().var(v).name == *p)
        })
        .count() as u64;
    let mut inputs = BoundInputs {
        d,
        d0,
        abs_alpha: alpha.total() as u64,
        abs_beta: beta.total() as u64 + params_present,
        m: 0,
        r: sys.equations().len() as u64,
        top_degree: 0,
        radical: config.assume_radical || geo.radical == RadicalStatus::Verified,
        equidimensional: geo.equidimensional,
    };
    if sys.equations().is_empty() {
        return Ok((trivial_report(inputs, 0, "no equations: nothing to eliminate"), geo));
    }
    let Some(m) = geo.m else {
        return Ok((
            trivial_report(inputs, 0, "the ideal is trivial over the kept variables: a relation exists without prolongation"),
            geo,
        ));
    };
    inputs.m = m;
    inputs.top_degree = geo.top_degree;
    if config.theorem == TheoremChoice::T3 {
        // dimension in all unknowns, not over the kept ones
        let mut vars = window.clone();
        vars.extend(sys.y_variables());
        let gb = buchberger_with(sys.equations(), &MonomialOrder::grevlex(vars), limits)?;
        inputs.m = if gb.is_trivial() { 0 } else { gb.dimension()? as u64 };
        inputs.d = degree_range(sys.equations(), &gb.order().variables()).0;
    }
    let mut report = select_bound(&inputs, config.theorem)?;
    if config.assume_radical {
        report.notes.push("radicality asserted by the caller".into());
    }
    if geo.radical == RadicalStatus::Verified {
        report.notes.push(format!("radicality verified at a random specialization ({})", geo.radical_method));
    }
    if inputs.m > 0 && !inputs.radical {
        report
            .notes
            .push("top degree counts multiplicity; it may exceed the geometric degree".into());
    }
    Ok((report, geo))
}

/// Augments (when configured) and computes the bound.
pub fn bound_for(sys: &DiffSystem, config: &ElimConfig) -> Result<BoundOutcome, ElimError> {
    let start = Instant::now();
    let limits = config.limits(start);
    let (sys, added) = if config.augment {
        sys.augment_derivatives()
    } else {
        (sys.clone(), Vec::new())
    };
    let (bound, geometry) = compute_bound(&sys, config, &limits)?;
    Ok(BoundOutcome {
        bound,
        geometry,
        augmented: added.iter().map(|p| p.to_string()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    RelationFound,
    NoRelationUpToBound,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InconclusiveReason {
    Cutoff { cutoff: Cutoff, depth: u32 },
    DepthLimit { max_depth: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthStats {
    pub depth: u32,
    pub equations: usize,
    pub variables: usize,
    pub basis_size: usize,
    pub gb: GbStats,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationReport {
    pub verdict: Verdict,
    pub bound: BoundReport,
    pub geometry: DimEstimate,
    /// Depth at which relations appeared.
    pub depth: Option<u32>,
    /// Relations in the kept variables, primitive with positive leading coefficient.
    pub relations: Vec<String>,
    #[serde(skip)]
    pub relation_polys: Vec<Polynomial>,
    pub augmented: Vec<String>,
    pub inconclusive: Option<InconclusiveReason>,
    pub per_depth: Vec<DepthStats>,
}

/// Grevlex over the kept variables of a relation, used to normalize output.
fn report_order(vars: &[usize]) -> MonomialOrder {
    MonomialOrder::grevlex(vars.to_vec())
}

/// Runs the depth loop `N = 0, 1, ...` up to the bound.
pub fn run_elimination(sys: &DiffSystem, config: &ElimConfig) -> Result<EliminationReport, ElimError> {
    let start = Instant::now();
    let limits = config.limits(start);
    let (sys, added) = if config.augment {
        sys.augment_derivatives()
    } else {
        (sys.clone(), Vec::new())
    };
    let (bound, geometry) = compute_bound(&sys, config, &limits)?;
    let b = u32::try_from(&bound.b).ok();
    let last = match (b, config.max_depth) {
        (Some(b), Some(m)) => b.min(m),
        (Some(b), None) => b,
        (None, Some(m)) => m,
        (None, None) => return Err(ElimError::UnboundedDepth(bound.b.to_string())),
    };
    let mut report = EliminationReport {
        verdict: Verdict::NoRelationUpToBound,
        bound,
        geometry,
        depth: None,
        relations: Vec::new(),
        relation_polys: Vec::new(),
        augmented: added.iter().map(|p| p.to_string()).collect(),
        inconclusive: None,
        per_depth: Vec::new(),
    };
    if sys.equations().is_empty() {
        return Ok(report);
    }
    for depth in 0..=last {
        let t0 = Instant::now();
        let prolonged = sys.prolong(depth);
        let keep = prolonged.y_variables();
        let eqs = prolonged.equations();
        let nvars: BTreeSet<usize> = eqs.iter().flat_map(|e| e.variables()).collect();
        let (rel, gb) = match elimination_ideal_with(eqs, &keep, &limits) {
            Ok(r) => r,
            Err(GbError::Cutoff { cutoff, stats }) => {
                report.per_depth.push(DepthStats {
                    depth,
                    equations: eqs.len(),
                    variables: nvars.len(),
                    basis_size: 0,
                    gb: stats,
                    elapsed: t0.elapsed(),
                });
                report.verdict = Verdict::Inconclusive;
                report.inconclusive = Some(InconclusiveReason::Cutoff { cutoff, depth });
                return Ok(report);
            }
            Err(e) => return Err(e.into()),
        };
        report.per_depth.push(DepthStats {
            depth,
            equations: eqs.len(),
            variables: nvars.len(),
            basis_size: gb.len(),
            gb: *gb.stats(),
            elapsed: t0.elapsed(),
        });
        if !rel.is_empty() {
            let order = report_order(&keep);
            let polys: Vec<Polynomial> = rel.iter().map(|p| p.normalized(&order)).collect();
            report.verdict = Verdict::RelationFound;
            report.depth = Some(depth);
            report.relations = polys.iter().map(|p| p.to_string()).collect();
            report.relation_polys = polys;
            return Ok(report);
        }
    }
    if b.is_none_or(|b| last < b) {
        report.verdict = Verdict::Inconclusive;
        report.inconclusive = Some(InconclusiveReason::DepthLimit { max_depth: last });
    }
    Ok(report)
}

/// Whether `1` stays outside the ideal of the system prolonged to `depth`.
pub fn check_consistency(sys: &DiffSystem, depth: u32, limits: &GbLimits) -> Result<bool, GbError> {
    Ok(!contains_one_with(sys.prolong(depth).equations(), limits)?)
}

#[cfg(test)]
mod tests;
