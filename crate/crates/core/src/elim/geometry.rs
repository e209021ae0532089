//! Dimension, degree, equidimensionality and radicality over the field of the
//! kept unknowns, estimated at random integer specializations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ElimConfig;
use crate::diffring::DiffSystem;
use crate::groebner::{buchberger_with, is_radical_zero_dim, GbError, GbLimits};
use crate::polycore::{MonomialOrder, Polynomial, Q};

/// Largest Jacobian minor size tried by the radicality check.
const MAX_MINOR_SIZE: usize = 7;
/// Largest number of minors added by the radicality check.
const MAX_MINORS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalStatus {
    /// Taken on trust from the caller.
    Assumed,
    Verified,
    /// A component is non-reduced at the sampled point.
    Refuted,
    Unknown,
}

/// How many trials produced a given `(m, D)` pair. `m` is `None` when the
/// specialized ideal was the whole ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub m: Option<u64>,
    pub top_degree: u64,
    pub count: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimEstimate {
    pub m: Option<u64>,
    pub top_degree: u64,
    pub equidimensional: bool,
    pub radical: RadicalStatus,
    pub radical_method: String,
    pub trials: Vec<TrialSummary>,
    pub seed: u64,
    pub generator: &'static str,
    /// The eliminated-variable window the ring is built on.
    pub window: Vec<String>,
}

/// Every `x^(j)` with `j < alpha_i`, interned, in registry order.
pub fn x_window(sys: &DiffSystem) -> Vec<usize> {
    let alpha = sys.order_tuple();
    let reg = sys.registry();
    let mut out: Vec<usize> = alpha
        .names
        .iter()
        .zip(&alpha.counts)
        .flat_map(|(n, &c)| (0..c).map(move |j| (n, j)))
        .map(|(n, j)| reg.intern(n, j))
        .collect();
    out.sort_unstable();
    out
}

struct Trial {
    m: Option<u64>,
    top_degree: u64,
    equidimensional: bool,
    radical: RadicalStatus,
    method: String,
}

fn random_q(rng: &mut ChaCha8Rng, range: u64) -> Q {
    Q::from_integer(BigInt::from(rng.gen_range(1..=range.max(1))))
}

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let reg = m[0][0].registry().clone();
    let mut acc = Polynomial::zero(&reg);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &determinant(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial_capped(n: usize, k: usize, cap: usize) -> usize {
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

/// Jacobian test for a complete intersection: radical iff the singular locus
/// has smaller dimension.
fn jacobian_radical(gens: &[Polynomial], window: &[usize], m: u64, limits: &GbLimits) -> Result<RadicalStatus, GbError> {
    let c = gens.len();
    let cols: Vec<usize> = window
        .iter()
        .copied()
        .filter(|&v| gens.iter().any(|g| g.variables().contains(&v)))
        .collect();
    if c == 0 || c > MAX_MINOR_SIZE || c > cols.len() || binomial_capped(cols.len(), c, MAX_MINORS) > MAX_MINORS {
        return Ok(RadicalStatus::Unknown);
    }
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| cols.iter().map(|&v| g.partial(v)).collect())
        .collect();
    let mut ideal = gens.to_vec();
    for pick in combinations(cols.len(), c) {
        let sub: Vec<Vec<Polynomial>> = jac
            .iter()
            .map(|row| pick.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let det = determinant(&sub);
        if !det.is_zero() {
            ideal.push(det);
        }
    }
    let gb = buchberger_with(&ideal, &MonomialOrder::grevlex(window.to_vec()), limits)?;
    if gb.is_trivial() || (gb.dimension()? as u64) < m {
        Ok(RadicalStatus::Verified)
    } else {
        Ok(RadicalStatus::Refuted)
    }
}

fn run_trial(sys: &DiffSystem, window: &[usize], config: &ElimConfig, limits: &GbLimits, index: u64) -> Result<Trial, GbError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let values: Vec<(usize, Q)> = sys
        .y_variables()
        .into_iter()
        .map(|v| (v, random_q(&mut rng, config.specialization_range)))
        .collect();
    let gens: Vec<Polynomial> = sys
        .equations()
        .iter()
        .map(|e| e.substitute(&values))
        .filter(|e| !e.is_zero())
        .collect();
    let order = MonomialOrder::grevlex(window.to_vec());
    let gb = buchberger_with(&gens, &order, limits)?;
    if gb.is_trivial() {
        return Ok(Trial {
            m: None,
            top_degree: 0,
            equidimensional: true,
            radical: RadicalStatus::Unknown,
            method: String::new(),
        });
    }
    let m = gb.dimension()? as u64;
    let top_degree = gb.degree_top()?;
    let codim = window.len() as u64 - m;
    // generators of a complete intersection, when one is found
    let mut ci_gens = (gens.len() as u64 == codim).then(|| gens.clone());
    if ci_gens.is_none() && m > 0 && codim > 0 {
        let combos: Vec<Polynomial> = (0..codim)
            .map(|_| {
                gens.iter().fold(Polynomial::zero(sys.registry()), |acc, g| {
                    &acc + &g.scale(&random_q(&mut rng, config.specialization_range))
                })
            })
            .collect();
        let cgb = buchberger_with(&combos, &order, limits)?;
        if cgb.polys() == gb.polys() {
            ci_gens = Some(combos);
        }
    }
    let equidimensional = m == 0 || ci_gens.is_some();
    let (radical, method) = if config.assume_radical {
        (RadicalStatus::Assumed, "asserted".to_string())
    } else if m == 0 {
        match is_radical_zero_dim(&gens, window, limits)? {
            Some(true) => (RadicalStatus::Verified, "squarefree eliminants".to_string()),
            Some(false) => (RadicalStatus::Refuted, "squarefree eliminants".to_string()),
            None => (RadicalStatus::Unknown, String::new()),
        }
    } else if let Some(ci) = &ci_gens {
        (jacobian_radical(ci, window, m, limits)?, "Jacobian minors".to_string())
    } else {
        (RadicalStatus::Unknown, String::new())
    };
    Ok(Trial {
        m: Some(m),
        top_degree,
        equidimensional,
        radical,
        method,
    })
}

/// Estimates dimension and top degree of the system's ideal in the window of
/// eliminated derivatives, over the field generated by everything else. Each
/// trial uses its own stream of a ChaCha8 generator seeded from `config.seed`;
/// the most frequent `(m, D)` wins, ties going to the earliest trial.
pub fn dim_over_param_field(sys: &DiffSystem, config: &ElimConfig, limits: &GbLimits) -> Result<DimEstimate, GbError> {
    let window = x_window(sys);
    let names = window.iter().map(|&v| sys.registry().render(v)).collect();
    let trials: Vec<Trial> = (0..u64::from(config.trials.max(1)))
        .into_par_iter()
        .map(|i| run_trial(sys, &window, config, limits, i))
        .collect::<Result<_, _>>()?;
    let mut counts: BTreeMap<(Option<u64>, u64), (u32, usize)> = BTreeMap::new();
    for (i, t) in trials.iter().enumerate() {
        counts.entry((t.m, t.top_degree)).or_insert((0, i)).0 += 1;
    }
    let (&(m, top_degree), &(_, first)) = counts
        .iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
        .expect("at least one trial");
    let pick = &trials[first];
    Ok(DimEstimate {
        m,
        top_degree,
        equidimensional: pick.equidimensional,
        radical: pick.radical,
        radical_method: pick.method.clone(),
        trials: counts
            .into_iter()
            .map(|((m, top_degree), (count, _))| TrialSummary { m, top_degree, count })
            .collect(),
        seed: config.seed,
        generator: crate::randcheck::GENERATOR,
        window: names,
    })
}
