//! Gröbner bases and the ideal queries built on them: membership, triviality,
//! elimination ideals, dimension and top-dimensional degree.

mod buchberger;
mod hilbert;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::polycore::{Coeff, Monomial, MonomialOrder, Polynomial, VarRegistry, Q};

use buchberger::{reduce_row, sort_row, Completion, Outcome, Row};
pub use hilbert::{hilbert_series_monomial, HilbertSeries};

/// Largest variable count accepted by [`GroebnerBasis::dimension`].
pub const MAX_DIMENSION_VARS: usize = 64;

/// Resource limits for one completion. `None` means unlimited.
#[derive(Clone, Debug, Default)]
pub struct GbLimits {
    pub max_pairs: Option<u64>,
    pub max_coeff_bits: Option<u64>,
    pub deadline: Option<Instant>,
}

impl GbLimits {
    pub fn unlimited() -> Self {
        GbLimits::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "limit", rename_all = "snake_case")]
pub enum Cutoff {
    Pairs(u64),
    CoefficientBits(u64),
    Deadline,
}

impl std::fmt::Display for Cutoff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cutoff::Pairs(n) => write!(f, "more than {n} critical pairs"),
            Cutoff::CoefficientBits(n) => write!(f, "coefficients above {n} bits"),
            Cutoff::Deadline => write!(f, "wall-clock deadline"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs_processed: u64,
    pub pairs_pruned: u64,
    pub zero_reductions: u64,
    pub max_coeff_bits: u64,
}

impl GbStats {
    pub fn absorb(&mut self, other: &GbStats) {
        self.pairs_processed += other.pairs_processed;
        self.pairs_pruned += other.pairs_pruned;
        self.zero_reductions += other.zero_reductions;
        self.max_coeff_bits = self.max_coeff_bits.max(other.max_coeff_bits);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error("generators belong to different variable registries")]
    RegistryMismatch,
    #[error("variable {0} does not occur in the monomial order")]
    UncoveredVariable(String),
    #[error("resource cutoff: {cutoff}")]
    Cutoff { cutoff: Cutoff, stats: GbStats },
    #[error("the ideal is the whole ring")]
    TrivialIdeal,
    #[error("dimension search supports at most {max} variables, got {count}")]
    TooManyVariables { count: usize, max: usize },
    #[error("degree does not fit in 64 bits")]
    DegreeOverflow,
}

/// Reduced Gröbner basis with respect to a fixed order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C: Coeff = Q> {
    registry: Option<Arc<VarRegistry>>,
    order: MonomialOrder,
    polys: Vec<Polynomial<C>>,
    rows: Vec<Row<C>>,
    stats: GbStats,
}

fn shared_registry<C: Coeff>(gens: &[Polynomial<C>]) -> Result<Option<Arc<VarRegistry>>, GbError> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    let reg = first.registry();
    if gens.iter().any(|g| !Arc::ptr_eq(g.registry(), reg)) {
        return Err(GbError::RegistryMismatch);
    }
    Ok(Some(reg.clone()))
}

fn all_variables<C: Coeff>(gens: &[Polynomial<C>]) -> BTreeSet<usize> {
    gens.iter().flat_map(|g| g.variables()).collect()
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<C: Coeff>(
    gens: &[Polynomial<C>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<C>, GbError> {
    buchberger_with(gens, order, &GbLimits::unlimited())
}

pub fn buchberger_with<C: Coeff>(
    gens: &[Polynomial<C>],
    order: &MonomialOrder,
    limits: &GbLimits,
) -> Result<GroebnerBasis<C>, GbError> {
    let registry = shared_registry(gens)?;
    let covered: BTreeSet<usize> = order.variables().into_iter().collect();
    if let Some(v) = all_variables(gens).into_iter().find(|v| !covered.contains(v)) {
        let name = registry.as_ref().map_or_else(|| v.to_string(), |r| r.render(v));
        return Err(GbError::UncoveredVariable(name));
    }
    let rows: Vec<Row<C>> = gens
        .iter()
        .map(|g| sort_row(g.terms().to_vec(), order))
        .collect();
    let (outcome, stats) = Completion::new(order)
        .run(rows, limits)
        .map_err(|(cutoff, stats)| GbError::Cutoff { cutoff, stats })?;
    let rows = match outcome {
        Outcome::Basis(rows) => rows,
        Outcome::Unit(c) => vec![vec![(Monomial::one(), c.one_like())]],
    };
    let polys = match &registry {
        Some(reg) => rows
            .iter()
            .map(|r| Polynomial::from_terms(reg, r.iter().cloned()))
            .collect(),
        None => Vec::new(),
    };
    Ok(GroebnerBasis {
        registry,
        order: order.clone(),
        polys,
        rows,
        stats,
    })
}

impl<C: Coeff> GroebnerBasis<C> {
    pub fn polys(&self) -> &[Polynomial<C>] {
        &self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.rows.iter().map(|r| r[0].0.clone()).collect()
    }

    /// True when the basis is `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.rows.len() == 1 && self.rows[0][0].0.is_one()
    }

    /// The order extended by a lowest block holding any variable of `f` it misses.
    fn order_for(&self, f: &Polynomial<C>) -> MonomialOrder {
        let covered: BTreeSet<usize> = self.order.variables().into_iter().collect();
        let extra: Vec<usize> = f.variables().into_iter().filter(|v| !covered.contains(v)).collect();
        if extra.is_empty() {
            return self.order.clone();
        }
        let mut blocks = self.order.blocks().to_vec();
        blocks.push(crate::polycore::Block::new(extra, Default::default()));
        MonomialOrder::block(blocks)
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial<C>) -> Result<Polynomial<C>, GbError> {
        if let Some(reg) = &self.registry {
            if !Arc::ptr_eq(reg, f.registry()) {
                return Err(GbError::RegistryMismatch);
            }
        }
        let order = self.order_for(f);
        let basis: Vec<&[(Monomial, C)]> = self.rows.iter().map(|r| r.as_slice()).collect();
        let row = reduce_row(sort_row(f.terms().to_vec(), &order), &basis, &order, true);
        Ok(Polynomial::from_terms(f.registry(), row))
    }

    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool, GbError> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Checks that every S-polynomial of the basis reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let basis: Vec<&[(Monomial, C)]> = self.rows.iter().map(|r| r.as_slice()).collect();
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                let (f, g) = (&self.rows[i], &self.rows[j]);
                let lcm = f[0].0.lcm(&g[0].0);
                let mf = f[0].0.quotient_of(&lcm).expect("lcm");
                let mg = g[0].0.quotient_of(&lcm).expect("lcm");
                let a = g[0].1.clone();
                let b = f[0].1.clone();
                let mut terms: Vec<(Monomial, C)> =
                    f.iter().map(|(m, c)| (m.mul(&mf), c.mul(&a))).collect();
                terms.extend(g.iter().map(|(m, c)| (m.mul(&mg), c.mul(&b).neg())));
                let merged = merge_terms(terms, &self.order);
                if !reduce_row(merged, &basis, &self.order, true).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Hilbert series of the leading-monomial ideal in the order's variables.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let vars = self.order.variables();
        let local: Vec<Monomial> = self
            .rows
            .iter()
            .map(|r| {
                let m = &r[0].0;
                Monomial::from_dense(vars.iter().map(|&v| m.exp(v)).collect::<Vec<u32>>())
            })
            .collect();
        hilbert_series_monomial(&local, vars.len())
    }

    /// Krull dimension of the quotient ring over the order's variables: the size
    /// of the largest variable set containing the support of no leading monomial.
    pub fn dimension(&self) -> Result<usize, GbError> {
        if self.is_trivial() {
            return Err(GbError::TrivialIdeal);
        }
        let vars = self.order.variables();
        if vars.len() > MAX_DIMENSION_VARS {
            return Err(GbError::TooManyVariables {
                count: vars.len(),
                max: MAX_DIMENSION_VARS,
            });
        }
        let masks: Vec<u64> = self
            .rows
            .iter()
            .map(|r| {
                vars.iter()
                    .enumerate()
                    .filter(|(_, &v)| r[0].0.exp(v) > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        Ok(vars.len() - min_hitting_set(&masks))
    }

    /// Degree of the top-dimensional part, counted with multiplicity, from the
    /// Hilbert polynomial. Non-graded orders are first converted to grevlex.
    pub fn degree_top(&self) -> Result<u64, GbError> {
        if self.is_trivial() {
            return Err(GbError::TrivialIdeal);
        }
        let hs = if self.order.is_degree_compatible() {
            self.hilbert_series()
        } else {
            let order = MonomialOrder::grevlex(self.order.variables());
            buchberger(&self.polys, &order)?.hilbert_series()
        };
        hs.degree_u64().ok_or(GbError::DegreeOverflow)
    }
}

fn merge_terms<C: Coeff>(terms: Vec<(Monomial, C)>, order: &MonomialOrder) -> Row<C> {
    let mut sorted = sort_row(terms, order);
    let mut out: Row<C> = Vec::with_capacity(sorted.len());
    for (m, c) in sorted.drain(..) {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Size of a smallest variable set meeting every mask.
fn min_hitting_set(masks: &[u64]) -> usize {
    fn search(masks: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        let open = masks
            .iter()
            .filter(|&&m| m & chosen == 0)
            .min_by_key(|m| m.count_ones());
        let Some(&mask) = open else {
            *best = size;
            return;
        };
        let mut bits = mask;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            search(masks, chosen | bit, size + 1, best);
            bits ^= bit;
        }
    }
    let mut best = usize::MAX;
    search(masks, 0, 0, &mut best);
    best
}

/// Grevlex over every variable occurring in `gens`, later-interned variables
/// first. Derivatives are interned after the variables they come from, so the
/// highest derivatives rank highest, which keeps prolonged systems cheap.
pub fn default_order<C: Coeff>(gens: &[Polynomial<C>]) -> MonomialOrder {
    MonomialOrder::grevlex(all_variables(gens).into_iter().rev().collect())
}

/// Normal form of `f` modulo `gb`.
pub fn reduce<C: Coeff>(f: &Polynomial<C>, gb: &GroebnerBasis<C>) -> Result<Polynomial<C>, GbError> {
    gb.reduce(f)
}

/// Whether `1` lies in the ideal generated by `gens`.
pub fn contains_one<C: Coeff>(gens: &[Polynomial<C>]) -> Result<bool, GbError> {
    contains_one_with(gens, &GbLimits::unlimited())
}

pub fn contains_one_with<C: Coeff>(gens: &[Polynomial<C>], limits: &GbLimits) -> Result<bool, GbError> {
    Ok(buchberger_with(gens, &default_order(gens), limits)?.is_trivial())
}

/// Elimination order putting every variable of `gens` outside `keep` above `keep`.
pub fn elimination_order<C: Coeff>(gens: &[Polynomial<C>], keep: &[usize]) -> MonomialOrder {
    let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
    let others: Vec<usize> = all_variables(gens)
        .into_iter()
        .filter(|v| !keep_set.contains(v))
        .collect();
    MonomialOrder::elimination(others, keep.to_vec())
}

/// Generators of `<gens> ∩ k[keep]`: the basis elements free of other variables
/// under an elimination order.
pub fn elimination_ideal<C: Coeff>(
    gens: &[Polynomial<C>],
    keep: &[usize],
) -> Result<Vec<Polynomial<C>>, GbError> {
    Ok(elimination_ideal_with(gens, keep, &GbLimits::unlimited())?.0)
}

/// As [`elimination_ideal`], also returning the full basis.
pub fn elimination_ideal_with<C: Coeff>(
    gens: &[Polynomial<C>],
    keep: &[usize],
    limits: &GbLimits,
) -> Result<(Vec<Polynomial<C>>, GroebnerBasis<C>), GbError> {
    let order = elimination_order(gens, keep);
    let gb = buchberger_with(gens, &order, limits)?;
    let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
    let rel = gb
        .polys()
        .iter()
        .filter(|p| p.involves_only(&keep_set))
        .cloned()
        .collect();
    Ok((rel, gb))
}

/// Radicality test for a zero-dimensional ideal in the variables of `order`: every
/// coordinate's eliminant must be squarefree. `None` if the ideal is not
/// zero-dimensional.
pub fn is_radical_zero_dim<C: Coeff>(
    gens: &[Polynomial<C>],
    vars: &[usize],
    limits: &GbLimits,
) -> Result<Option<bool>, GbError> {
    let gb = buchberger_with(gens, &MonomialOrder::grevlex(vars.to_vec()), limits)?;
    if gb.is_trivial() {
        return Ok(Some(true));
    }
    if gb.dimension()? != 0 {
        return Ok(None);
    }
    for &v in vars {
        let (rel, _) = elimination_ideal_with(gb.polys(), &[v], limits)?;
        let Some(p) = rel.into_iter().next() else {
            return Ok(None);
        };
        let dp = p.partial(v);
        if !contains_one_with(&[p, dp], limits)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Fp;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    struct Ring {
        reg: Arc<VarRegistry>,
    }

    impl Ring {
        fn new(names: &[&str]) -> Self {
            let reg = VarRegistry::new();
            for n in names {
                reg.intern(n, 0);
            }
            Ring { reg }
        }

        fn v(&self, i: usize) -> Polynomial {
            Polynomial::var(&self.reg, i)
        }

        fn c(&self, n: i64) -> Polynomial {
            Polynomial::from_int(&self.reg, n)
        }

        fn poly(&self, terms: &[(i64, &[u32])]) -> Polynomial {
            Polynomial::from_terms(
                &self.reg,
                terms
                    .iter()
                    .map(|(c, e)| (Monomial::from_dense(e.to_vec()), Q::from_integer(BigInt::from(*c)))),
            )
        }
    }

    #[test]
    fn single_generator() {
        let r = Ring::new(&["x"]);
        let gb = buchberger(&[r.v(0)], &MonomialOrder::grevlex(vec![0])).unwrap();
        assert_eq!(gb.polys(), &[r.v(0)]);
    }

    #[test]
    fn linear_solve() {
        let r = Ring::new(&["x", "y"]);
        let gens = [&r.v(0) - &r.v(1), &r.v(0) + &r.v(1)];
        let gb = buchberger(&gens, &MonomialOrder::lex(vec![0, 1])).unwrap();
        assert_eq!(gb.polys(), &[r.v(0), r.v(1)]);
    }

    #[test]
    fn twisted_cubic_lex() {
        // by hand: x^3 - z reduces to x*y - z; S(x^2 - y, x*y - z) = x*z - y^2;
        // S(x*y - z, x*z - y^2) = y^3 - z^2; all remaining pairs reduce to zero
        let r = Ring::new(&["x", "y", "z"]);
        let gens = [
            r.poly(&[(1, &[2]), (-1, &[0, 1])]),
            r.poly(&[(1, &[3]), (-1, &[0, 0, 1])]),
        ];
        let gb = buchberger(&gens, &MonomialOrder::lex(vec![0, 1, 2])).unwrap();
        let expected = vec![
            r.poly(&[(1, &[2]), (-1, &[0, 1])]),
            r.poly(&[(1, &[1, 1]), (-1, &[0, 0, 1])]),
            r.poly(&[(1, &[1, 0, 1]), (-1, &[0, 2])]),
            r.poly(&[(1, &[0, 3]), (-1, &[0, 0, 2])]),
        ];
        assert_eq!(gb.polys(), expected.as_slice());
        assert!(gb.is_groebner());
    }

    #[test]
    fn reduce_examples() {
        let r = Ring::new(&["x", "y"]);
        let g = &(&r.v(0) * &r.v(1)) - &r.c(3);
        let gb = buchberger(&[g.clone()], &MonomialOrder::grevlex(vec![0, 1])).unwrap();
        assert!(reduce(&g, &gb).unwrap().is_zero());

        let gbx = buchberger(&[r.v(0)], &MonomialOrder::grevlex(vec![0, 1])).unwrap();
        assert_eq!(reduce(&r.c(1), &gbx).unwrap(), r.c(1));

        let gbl = buchberger(&[&r.v(0) - &r.v(1)], &MonomialOrder::lex(vec![0, 1])).unwrap();
        let x2 = &r.v(0) * &r.v(0);
        assert_eq!(reduce(&x2, &gbl).unwrap(), &r.v(1) * &r.v(1));
    }

    #[test]
    fn triviality() {
        let r = Ring::new(&["x"]);
        assert!(contains_one(&[r.v(0), &r.v(0) - &r.c(1)]).unwrap());
        assert!(!contains_one(&[r.v(0)]).unwrap());
        assert!(!contains_one::<Q>(&[]).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = Ring::new(&["x", "y"]);
        let x = r.v(0);
        let y = r.v(1);
        let rel = elimination_ideal(&[&x - &(&y * &y)], &[1]).unwrap();
        assert!(rel.is_empty());
        let rel = elimination_ideal(&[x.clone(), &y - &x], &[1]).unwrap();
        assert_eq!(rel, vec![y]);
    }

    #[test]
    fn dimension_examples() {
        let r = Ring::new(&["x", "y"]);
        let empty = buchberger::<Q>(&[], &MonomialOrder::grevlex(vec![0, 1])).unwrap();
        assert_eq!(empty.dimension().unwrap(), 2);
        let circle = &(&(&r.v(0) * &r.v(0)) + &(&r.v(1) * &r.v(1))) - &r.c(1);
        let gb = buchberger(&[circle], &MonomialOrder::grevlex(vec![0, 1])).unwrap();
        assert_eq!(gb.dimension().unwrap(), 1);
        assert_eq!(gb.degree_top().unwrap(), 2);
        let unit = buchberger(&[r.c(2)], &MonomialOrder::grevlex(vec![0, 1])).unwrap();
        assert!(unit.is_trivial());
        assert_eq!(unit.dimension(), Err(GbError::TrivialIdeal));
    }

    #[test]
    fn degree_under_elimination_order() {
        // two points on the line y = x, computed with a block order
        let r = Ring::new(&["x", "y"]);
        let gens = [&r.v(0) - &r.v(1), &(&r.v(1) * &r.v(1)) - &r.c(1)];
        let gb = buchberger(&gens, &MonomialOrder::elimination(vec![0], vec![1])).unwrap();
        assert_eq!(gb.dimension().unwrap(), 0);
        assert_eq!(gb.degree_top().unwrap(), 2);
    }

    #[test]
    fn radicality_zero_dim() {
        let r = Ring::new(&["x", "y"]);
        let x2 = &r.v(0) * &r.v(0);
        let sq = [x2.clone(), r.v(1)];
        assert_eq!(is_radical_zero_dim(&sq, &[0, 1], &GbLimits::default()).unwrap(), Some(false));
        let pts = [&x2 - &r.c(1), r.v(1)];
        assert_eq!(is_radical_zero_dim(&pts, &[0, 1], &GbLimits::default()).unwrap(), Some(true));
        let line = [r.v(1)];
        assert_eq!(is_radical_zero_dim(&line, &[0, 1], &GbLimits::default()).unwrap(), None);
    }

    #[test]
    fn modular_basis() {
        let r = Ring::new(&["x", "y"]);
        let gens: Vec<Polynomial<Fp>> = [&r.v(0) - &r.v(1), &r.v(0) + &r.v(1)]
            .iter()
            .map(|p| p.to_modular(101).unwrap())
            .collect();
        let gb = buchberger(&gens, &MonomialOrder::lex(vec![0, 1])).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.is_groebner());
    }

    #[test]
    fn pair_cutoff_is_reported() {
        let r = Ring::new(&["x", "y", "z"]);
        let gens = [
            r.poly(&[(1, &[3]), (-2, &[0, 1, 1]), (1, &[0, 0, 1])]),
            r.poly(&[(1, &[1, 2]), (3, &[0, 0, 2]), (-1, &[1])]),
            r.poly(&[(1, &[0, 1, 2]), (-1, &[2, 0, 1]), (5, &[])]),
        ];
        let limits = GbLimits {
            max_pairs: Some(1),
            ..Default::default()
        };
        let err = buchberger_with(&gens, &MonomialOrder::lex(vec![0, 1, 2]), &limits).unwrap_err();
        assert!(matches!(err, GbError::Cutoff { cutoff: Cutoff::Pairs(1), .. }));
    }

    #[test]
    fn hitting_set() {
        assert_eq!(min_hitting_set(&[]), 0);
        assert_eq!(min_hitting_set(&[0b011, 0b110]), 1);
        assert_eq!(min_hitting_set(&[0b001, 0b010, 0b100]), 3);
    }

    fn small_poly(r: &Ring, terms: Vec<(i64, Vec<u32>)>) -> Polynomial {
        Polynomial::from_terms(
            &r.reg,
            terms
                .into_iter()
                .map(|(c, e)| (Monomial::from_dense(e), Q::from_integer(BigInt::from(c)))),
        )
    }

    pub(crate) fn poly_strategy(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
        prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_exp, nvars)), 1..=max_terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn spolys_reduce_to_zero(a in poly_strategy(3, 3, 2), b in poly_strategy(3, 3, 2), c in poly_strategy(3, 2, 2)) {
            let r = Ring::new(&["x", "y", "z"]);
            let gens = [small_poly(&r, a), small_poly(&r, b), small_poly(&r, c)];
            for order in [MonomialOrder::grevlex(vec![0, 1, 2]), MonomialOrder::lex(vec![0, 1, 2])] {
                let gb = buchberger(&gens, &order).unwrap();
                prop_assert!(gb.is_groebner());
                for g in &gens {
                    prop_assert!(gb.contains(g).unwrap());
                }
            }
        }

        #[test]
        fn membership_of_combinations(a in poly_strategy(3, 3, 2), b in poly_strategy(3, 3, 2),
                                      u in poly_strategy(3, 3, 1), v in poly_strategy(3, 3, 1)) {
            let r = Ring::new(&["x", "y", "z"]);
            let (a, b) = (small_poly(&r, a), small_poly(&r, b));
            let f = &(&small_poly(&r, u) * &a) + &(&small_poly(&r, v) * &b);
            let gb = buchberger(&[a, b], &MonomialOrder::grevlex(vec![0, 1, 2])).unwrap();
            prop_assert!(gb.contains(&f).unwrap());
        }

        #[test]
        fn elimination_is_sound(a in poly_strategy(3, 3, 2), b in poly_strategy(3, 3, 2)) {
            let r = Ring::new(&["x", "y", "z"]);
            let gens = [small_poly(&r, a), small_poly(&r, b)];
            let (rel, gb) = elimination_ideal_with(&gens, &[1, 2], &GbLimits::default()).unwrap();
            let full = buchberger(&gens, &MonomialOrder::grevlex(vec![0, 1, 2])).unwrap();
            let keep: BTreeSet<usize> = [1, 2].into_iter().collect();
            for p in &rel {
                prop_assert!(p.involves_only(&keep));
                prop_assert!(full.contains(p).unwrap());
            }
            prop_assert!(gb.is_groebner());
        }

        #[test]
        fn dimension_invariance(a in poly_strategy(3, 3, 2), b in poly_strategy(3, 3, 2), k in 1i64..7) {
            let r = Ring::new(&["x", "y", "z"]);
            let (a, b) = (small_poly(&r, a), small_poly(&r, b));
            let order = MonomialOrder::grevlex(vec![0, 1, 2]);
            let g1 = buchberger(&[a.clone(), b.clone()], &order).unwrap();
            let g2 = buchberger(&[b.clone(), a.scale(&Q::from_integer(BigInt::from(-k)))], &order).unwrap();
            prop_assert_eq!(g1.polys(), g2.polys());
            if !g1.is_trivial() {
                let d = g1.dimension().unwrap();
                prop_assert_eq!(d, g2.dimension().unwrap());
                prop_assert_eq!(Some(d), g1.hilbert_series().dimension());
                let lex = buchberger(&[a, b], &MonomialOrder::lex(vec![2, 0, 1])).unwrap();
                prop_assert_eq!(d, lex.dimension().unwrap());
            }
        }

        #[test]
        fn hypersurface_degree(a in poly_strategy(3, 4, 3)) {
            let r = Ring::new(&["x", "y", "z"]);
            let f = small_poly(&r, a);
            prop_assume!(!f.is_zero() && !f.is_constant());
            // degree with multiplicity, so squarefreeness is not needed
            let gb = buchberger(&[f.clone()], &MonomialOrder::grevlex(vec![0, 1, 2])).unwrap();
            prop_assert_eq!(gb.degree_top().unwrap() as u32, f.total_degree().finite().unwrap());
        }
    }
}
