//! `diffelim`: bounds, elimination, randomized checks and witnesses for
//! systems of differential-algebraic equations.

mod args;
mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use serde::Serialize;

use diffelim::elim::{bound_for, run_elimination, ElimConfig, ElimError, Verdict};
use diffelim::groebner::{Cutoff, GbError, GbLimits};
use diffelim::randcheck::{randomized_dae_check, DaeVerdict, RandError};
use diffelim::sysfile::{parse_system, SystemFile};
use diffelim::witness::{minimal_inconsistency_depth, witness_report, witness_system};

use args::{parse_probability, Cli, Command, Common};
use report::{Report, Timings};

/// Process exit statuses.
const EXIT_DEFINITE: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(path: &Path) -> Result<SystemFile, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_system(&src).map_err(|e| Failure(format!("{}:{e}", path.display())))
}

fn seed_or_random(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn config(common: &Common, seed: u64) -> ElimConfig {
    ElimConfig {
        theorem: common.theorem.into(),
        assume_radical: common.radical,
        trials: common.trials,
        seed,
        augment: common.augment_derivatives,
        max_depth: common.max_depth,
        max_pairs: common.max_pairs,
        max_coeff_bits: common.max_bits,
        timeout: common.timeout.map(Duration::from_secs_f64),
        ..ElimConfig::default()
    }
}

/// Writes the report and picks the exit status.
fn emit<T: Serialize>(report: &Report<T>, json: bool, text: &str, definite: bool) -> Result<u8, Failure> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{text}");
    }
    Ok(if definite { EXIT_DEFINITE } else { EXIT_INCONCLUSIVE })
}

/// Report for a run stopped by a resource limit before any verdict.
fn cut_off(command: &str, file: &Path, seed: u64, cutoff: Cutoff, json: bool) -> Result<u8, Failure> {
    let r = Report::new(command, file, Some(seed), report::Stopped { cutoff }, None);
    emit(&r, json, &format!("inconclusive: stopped at {cutoff}\n"), false)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let start = Instant::now();
    match cli.command {
        Command::Bound { file, common } => {
            let sys = load(&file)?;
            let seed = seed_or_random(common.seed);
            let out = match bound_for(&sys.system, &config(&common, seed)) {
                Ok(o) => o,
                Err(ElimError::Gb(GbError::Cutoff { cutoff, .. })) => return cut_off("bound", &file, seed, cutoff, common.json),
                Err(e) => return Err(e.into()),
            };
            let text = report::bound_text(&out);
            let timings = common.timings.then(|| Timings::total(start));
            emit(&Report::new("bound", &file, Some(seed), out, timings), common.json, &text, true)
        }
        Command::Eliminate { file, common } => {
            let sys = load(&file)?;
            let seed = seed_or_random(common.seed);
            let rep = match run_elimination(&sys.system, &config(&common, seed)) {
                Ok(r) => r,
                Err(ElimError::Gb(GbError::Cutoff { cutoff, .. })) => return cut_off("eliminate", &file, seed, cutoff, common.json),
                Err(e) => return Err(e.into()),
            };
            let text = report::elimination_text(&rep);
            let definite = rep.verdict != Verdict::Inconclusive;
            let timings = common.timings.then(|| Timings::with_depths(start, &rep.per_depth));
            emit(&Report::new("eliminate", &file, Some(seed), rep, timings), common.json, &text, definite)
        }
        Command::CheckElim {
            file,
            randomized,
            p,
            modular,
            common,
        } => {
            if !randomized {
                return Err(Failure("only --randomized checks are available".into()));
            }
            let sys = load(&file)?;
            let prob = parse_probability(&p)?;
            let seed = seed_or_random(common.seed);
            let rep = match randomized_dae_check(&sys.system, &prob, seed, &config(&common, seed), modular) {
                Ok(r) => r,
                Err(RandError::Gb(GbError::Cutoff { cutoff, .. }))
                | Err(RandError::Elim(ElimError::Gb(GbError::Cutoff { cutoff, .. }))) => {
                    return cut_off("check-elim", &file, seed, cutoff, common.json)
                }
                Err(e) => return Err(e.into()),
            };
            let text = match (rep.verdict, rep.depth) {
                (DaeVerdict::Possible, Some(n)) => format!("possible, depth {n}\n"),
                (DaeVerdict::Impossible, _) => format!("impossible (p ≥ {p})\n"),
                _ => "inconclusive\n".to_string(),
            };
            let definite = rep.verdict != DaeVerdict::Inconclusive;
            let timings = common.timings.then(|| Timings::total(start));
            emit(&Report::new("check-elim", &file, Some(seed), rep, timings), common.json, &text, definite)
        }
        Command::Witness {
            degree,
            search_depth,
            timeout,
            json,
            timings,
        } => {
            let (w, wr) = witness_report(degree)?;
            let mut search = None;
            let mut definite = wr.certificate_holds;
            if let Some(max) = search_depth {
                let limits = GbLimits {
                    deadline: timeout.map(|t| Instant::now() + Duration::from_secs_f64(t)),
                    ..GbLimits::default()
                };
                search = Some(match minimal_inconsistency_depth(&witness_system(&w), max, &limits) {
                    Ok(Some(n)) => report::Search::Found { depth: n, max_depth: max },
                    Ok(None) => report::Search::NotFound { max_depth: max },
                    Err(GbError::Cutoff { cutoff, .. }) => {
                        definite = false;
                        report::Search::Cutoff { cutoff, max_depth: max }
                    }
                    Err(e) => return Err(e.into()),
                });
            }
            let text = report::witness_text(&wr, search.as_ref());
            let body = report::WitnessBody { witness: wr, search };
            let timings = timings.then(|| Timings::total(start));
            emit(&Report::new("witness", Path::new(""), None, body, timings), json, &text, definite)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_DEFINITE });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
