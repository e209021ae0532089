use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use diffelim::elim::{BoundOutcome, DepthStats, EliminationReport, Verdict};
use diffelim::groebner::Cutoff;
use diffelim::witness::WitnessReport;

/// Bumped whenever the JSON layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

/// Top-level JSON document written by every subcommand.
#[derive(Serialize)]
pub struct Report<T> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl<T> Report<T> {
    pub fn new(command: &str, input: &Path, seed: Option<u64>, result: T, timings: Option<Timings>) -> Self {
        let input = input.as_os_str().to_string_lossy().into_owned();
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "diffelim",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input: (!input.is_empty()).then_some(input),
            seed,
            result,
            timings,
        }
    }
}

#[derive(Serialize)]
pub struct Timings {
    pub total_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_depth_ms: Option<Vec<f64>>,
}

impl Timings {
    pub fn total(start: Instant) -> Self {
        Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            per_depth_ms: None,
        }
    }

    pub fn with_depths(start: Instant, depths: &[DepthStats]) -> Self {
        Timings {
            per_depth_ms: Some(depths.iter().map(|d| d.elapsed.as_secs_f64() * 1e3).collect()),
            ..Timings::total(start)
        }
    }
}

/// Result of a run stopped before it reached a verdict.
#[derive(Serialize)]
pub struct Stopped {
    pub cutoff: Cutoff,
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Search {
    Found { depth: u32, max_depth: u32 },
    NotFound { max_depth: u32 },
    Cutoff { cutoff: Cutoff, max_depth: u32 },
}

#[derive(Serialize)]
pub struct WitnessBody {
    pub witness: WitnessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<Search>,
}

fn profile(p: &[num_bigint::BigUint]) -> String {
    let parts: Vec<String> = p.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn bound_text(out: &BoundOutcome) -> String {
    let b = &out.bound;
    let i = &b.inputs;
    let mut s = String::new();
    for eq in &out.augmented {
        let _ = writeln!(s, "added {eq} = 0");
    }
    let _ = writeln!(
        s,
        "d = {}, d0 = {}, |alpha| = {}, |beta| = {}, r = {}",
        i.d, i.d0, i.abs_alpha, i.abs_beta, i.r
    );
    match out.geometry.m {
        Some(m) => {
            let _ = writeln!(s, "m = {m}, D profile {}", profile(&b.profile));
        }
        None => s.push_str("the kept variables are already constrained\n"),
    }
    let _ = writeln!(s, "theorem {:?}", b.theorem);
    let _ = writeln!(s, "B = {}", b.b);
    s
}

pub fn elimination_text(rep: &EliminationReport) -> String {
    let mut s = format!("B = {}\n", rep.bound.b);
    match rep.verdict {
        Verdict::RelationFound => {
            let _ = writeln!(s, "relation found at depth {}", rep.depth.unwrap_or(0));
            for r in &rep.relations {
                let _ = writeln!(s, "  {r} = 0");
            }
        }
        Verdict::NoRelationUpToBound => s.push_str("no relation up to the bound\n"),
        Verdict::Inconclusive => s.push_str("inconclusive\n"),
    }
    s
}

pub fn witness_text(w: &WitnessReport, search: Option<&Search>) -> String {
    let mut s = format!("P = {}\nB = {}\n", w.polynomial, w.b);
    let _ = writeln!(
        s,
        "series certificate for depth {}: {}",
        w.certified_depth,
        if w.certificate_holds { "holds" } else { "fails" }
    );
    match search {
        Some(Search::Found { depth, .. }) => {
            let _ = writeln!(s, "inconsistent at depth {depth}");
        }
        Some(Search::NotFound { max_depth }) => {
            let _ = writeln!(s, "consistent up to depth {max_depth}");
        }
        Some(Search::Cutoff { cutoff, .. }) => {
            let _ = writeln!(s, "depth search stopped at {cutoff}");
        }
        None => {}
    }
    s
}
