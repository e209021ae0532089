//! Witness systems `x' = 1, y' = y, P(x, y) = 0` whose inconsistency needs many
//! prolongations, and series certificates for ideal nonmembership.
//!
//! `P` is chosen so that `P(t, e^t)` vanishes to order `B = d(d+3)/2`. A formal
//! solution to that order shows `1` is not in the prolongation of depth `B - 1`.

mod series;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bounds::{lower_bound_order, BoundError};
use crate::diffring::DiffSystem;
use crate::groebner::{contains_one_with, GbError, GbLimits};
use crate::polycore::{Monomial, MonomialOrder, Polynomial, VarRegistry, Q};

pub use series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("basis matrix for d = {0} is singular")]
    Singular(u64),
    #[error("no series given for `{0}`")]
    MissingSeries(String),
    #[error("series for `{name}` has {len} coefficients, {needed} needed")]
    SeriesTooShort { name: String, len: usize, needed: usize },
    #[error("series substitution left t^{valuation} instead of t^{expected}")]
    SeriesMismatch { valuation: String, expected: u64 },
}

/// Exponent pairs `(i, j)` with `i + j <= d`, by total degree, larger `i` first.
pub fn basis_pairs(d: u64) -> Vec<(u32, u32)> {
    let d = d as u32;
    (0..=d)
        .flat_map(|s| (0..=s).rev().map(move |i| (i, s - i)))
        .collect()
}

/// Matrix whose columns are the Taylor coefficients of `t^i e^(jt)` up to `t^B`,
/// one row per power of `t`.
pub fn basis_matrix(d: u64) -> Result<Vec<Vec<Q>>, WitnessError> {
    let b = lower_bound_order(d)? as usize;
    let cols: Vec<TruncatedSeries> = basis_pairs(d)
        .into_iter()
        .map(|(i, j)| TruncatedSeries::t_pow_exp(i, j, b + 1))
        .collect();
    let m: Vec<Vec<Q>> = (0..=b)
        .map(|k| cols.iter().map(|c| c.coeff(k)).collect())
        .collect();
    if determinant(&m).is_zero() {
        return Err(WitnessError::Singular(d));
    }
    Ok(m)
}

/// Exact determinant by fraction elimination.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let n = a.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Solves `m x = rhs` for a nonsingular square `m`.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// The witness polynomial with the data it was built from.
#[derive(Clone, Debug)]
pub struct Witness {
    pub d: u64,
    /// Order `B` to which `P(t, e^t)` vanishes.
    pub b: u64,
    /// `P(x, y)`, integer-primitive, lex-leading coefficient (x > y) negative.
    pub polynomial: Polynomial,
    /// Exact solution `mu_(i,j)` before normalization.
    pub mu: Vec<((u32, u32), Q)>,
    pub determinant: Q,
}

/// Builds `P` from the unique `mu` with `sum mu_(i,j) t^i e^(jt) = t^B + O(t^(B+1))`,
/// and checks the identity by substitution.
pub fn solve_witness(d: u64) -> Result<Witness, WitnessError> {
    let b = lower_bound_order(d)?;
    let m = basis_matrix(d)?;
    let det = determinant(&m);
    let mut rhs = vec![Q::zero(); b as usize + 1];
    rhs[b as usize] = Q::one();
    let mu = solve(&m, &rhs).ok_or(WitnessError::Singular(d))?;
    let pairs = basis_pairs(d);
    let reg = VarRegistry::new();
    let x = reg.intern("x", 0);
    let y = reg.intern("y", 0);
    let p = Polynomial::from_terms(
        &reg,
        pairs
            .iter()
            .zip(&mu)
            .map(|(&(i, j), c)| (Monomial::from_sparse(&[(x, i), (y, j)]), c.clone())),
    );
    let (_, mut p) = p.content_and_primitive();
    let lex = MonomialOrder::lex(vec![x, y]);
    if p.leading_term(&lex).map(|(_, c)| c.is_positive()).unwrap_or(false) {
        p = -&p;
    }
    let series = HashMap::from([
        ("x".to_string(), TruncatedSeries::t_pow_exp(1, 0, b as usize + 2)),
        ("y".to_string(), TruncatedSeries::t_pow_exp(0, 1, b as usize + 2)),
    ]);
    let val = substitute_series(&p, &series, b as usize + 2)?.valuation();
    if val != Some(b as usize) {
        return Err(WitnessError::SeriesMismatch {
            valuation: val.map_or("inf".into(), |v| v.to_string()),
            expected: b,
        });
    }
    Ok(Witness {
        d,
        b,
        polynomial: p,
        mu: pairs.into_iter().zip(mu).collect(),
        determinant: det,
    })
}

/// `{x' - 1, y' - y, P}` with both unknowns to be eliminated.
pub fn witness_system(w: &Witness) -> DiffSystem {
    let reg = w.polynomial.registry().clone();
    let x1 = Polynomial::var(&reg, reg.intern("x", 1));
    let y = Polynomial::var(&reg, reg.intern("y", 0));
    let y1 = Polynomial::var(&reg, reg.intern("y", 1));
    let eqs = vec![&x1 - &Polynomial::from_int(&reg, 1), &y1 - &y, w.polynomial.clone()];
    DiffSystem::new(&reg, eqs, vec!["x".into(), "y".into()], vec![], vec![]).expect("witness variables are declared")
}

/// Whether `P` is absolutely irreducible, for degree at most 2: lines always
/// are, conics when their 3x3 symmetric matrix is nonsingular. `None` above 2.
pub fn absolutely_irreducible(p: &Polynomial) -> Option<bool> {
    let deg = p.total_degree().finite()?;
    match deg {
        0 => Some(false),
        1 => Some(true),
        2 => {
            let reg = p.registry();
            let (x, y) = (reg.lookup("x", 0)?, reg.lookup("y", 0)?);
            let c = |i: u32, j: u32| {
                p.coefficient(&Monomial::from_sparse(&[(x, i), (y, j)]))
                    .cloned()
                    .unwrap_or_else(Q::zero)
            };
            let half = Q::new(BigInt::one(), BigInt::from(2));
            let m = vec![
                vec![c(2, 0), &c(1, 1) * &half, &c(1, 0) * &half],
                vec![&c(1, 1) * &half, c(0, 2), &c(0, 1) * &half],
                vec![&c(1, 0) * &half, &c(0, 1) * &half, c(0, 0)],
            ];
            Some(!determinant(&m).is_zero())
        }
        _ => None,
    }
}

/// Composes `p` with the series, replacing each `v^(j)` by the `j`-th
/// derivative of `v`'s series, truncated to `len` coefficients.
pub fn substitute_series(
    p: &Polynomial,
    series: &HashMap<String, TruncatedSeries>,
    len: usize,
) -> Result<TruncatedSeries, WitnessError> {
    let reg: &Arc<VarRegistry> = p.registry();
    let mut cache: HashMap<usize, TruncatedSeries> = HashMap::new();
    for v in p.variables() {
        let var = reg.var(v);
        let s = series
            .get(&var.name)
            .ok_or_else(|| WitnessError::MissingSeries(var.name.clone()))?;
        let needed = len + var.order as usize;
        if s.len() < needed {
            return Err(WitnessError::SeriesTooShort {
                name: var.name.clone(),
                len: s.len(),
                needed,
            });
        }
        cache.insert(v, s.derivative_n(var.order).truncate(len));
    }
    let mut acc = TruncatedSeries::zero(len);
    for (m, c) in p.terms() {
        let mut term = TruncatedSeries::constant(c.clone(), len);
        for (v, e) in m.iter() {
            for _ in 0..e {
                term = term.mul(&cache[&v]);
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Order of vanishing of each equation under the series, `None` meaning zero
/// to the truncation length `n`.
pub fn residual_orders(
    sys: &DiffSystem,
    series: &HashMap<String, TruncatedSeries>,
    n: usize,
) -> Result<Vec<Option<usize>>, WitnessError> {
    sys.equations()
        .iter()
        .map(|e| Ok(substitute_series(e, series, n)?.valuation()))
        .collect()
}

/// True when every equation vanishes to order `n` under the series, which
/// certifies `1` is outside the prolongation of depth `n - 1`.
pub fn certify_nonmembership(
    sys: &DiffSystem,
    series: &HashMap<String, TruncatedSeries>,
    n: usize,
) -> Result<bool, WitnessError> {
    Ok(residual_orders(sys, series, n)?.iter().all(|v| v.is_none()))
}

/// Least `N <= max_depth` with `1` in the prolongation of depth `N`.
pub fn minimal_inconsistency_depth(sys: &DiffSystem, max_depth: u32, limits: &GbLimits) -> Result<Option<u32>, GbError> {
    for n in 0..=max_depth {
        if contains_one_with(sys.prolong(n).equations(), limits)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The series `(t, e^t)` for the witness unknowns, with `len` coefficients.
pub fn witness_series(len: usize) -> HashMap<String, TruncatedSeries> {
    HashMap::from([
        ("x".to_string(), TruncatedSeries::t_pow_exp(1, 0, len)),
        ("y".to_string(), TruncatedSeries::t_pow_exp(0, 1, len)),
    ])
}

/// Serializable summary of a witness and its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub d: u64,
    pub b: u64,
    pub polynomial: String,
    pub determinant: String,
    pub absolutely_irreducible: Option<bool>,
    /// Depth `B - 1` at which `1` is certified absent.
    pub certified_depth: u64,
    pub certificate_holds: bool,
    pub residual_orders: Vec<Option<usize>>,
}

/// Solves and certifies the witness of degree `d`.
pub fn witness_report(d: u64) -> Result<(Witness, WitnessReport), WitnessError> {
    let w = solve_witness(d)?;
    let sys = witness_system(&w);
    let n = w.b as usize;
    let series = witness_series(n + 2);
    let orders = residual_orders(&sys, &series, n)?;
    let report = WitnessReport {
        d,
        b: w.b,
        polynomial: w.polynomial.to_string(),
        determinant: w.determinant.to_string(),
        absolutely_irreducible: absolutely_irreducible(&w.polynomial),
        certified_depth: w.b - 1,
        certificate_holds: orders.iter().all(|v| v.is_none()),
        residual_orders: orders,
    };
    Ok((w, report))
}
