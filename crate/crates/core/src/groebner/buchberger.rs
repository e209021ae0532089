//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer-Möller pair criteria.
//!
//! Polynomials are handled as term lists sorted decreasingly by the active order.
//! Reduction during the completion is fraction-free: coefficients stay integral
//! over Q and the integer content is divided out after every step.

use std::cmp::Ordering;
use std::time::Instant;

use crate::polycore::{Coeff, Monomial, MonomialOrder};

use super::{Cutoff, GbLimits, GbStats};

pub(crate) type Row<C> = Vec<(Monomial, C)>;

pub(crate) fn sort_row<C: Coeff>(mut row: Row<C>, order: &MonomialOrder) -> Row<C> {
    row.sort_by(|a, b| order.compare(&b.0, &a.0));
    row
}

/// `a*p - b*mono*g`, all rows sorted by `order`.
fn combine<C: Coeff>(
    p: &[(Monomial, C)],
    a: &C,
    b: &C,
    mono: &Monomial,
    g: &[(Monomial, C)],
    order: &MonomialOrder,
) -> Row<C> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |j: usize| g[j].0.mul(mono);
    let mut gj = if j < g.len() { Some(shifted(j)) } else { None };
    while i < p.len() {
        let Some(gm) = gj.as_ref() else { break };
        match order.compare(&p[i].0, gm) {
            Ordering::Greater => {
                out.push((p[i].0.clone(), p[i].1.mul(a)));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.clone(), g[j].1.mul(b).neg()));
                j += 1;
                gj = if j < g.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let c = p[i].1.mul(a).sub(&g[j].1.mul(b));
                if !c.is_zero() {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gj = if j < g.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out.extend(p[i..].iter().map(|(m, c)| (m.clone(), c.mul(a))));
    if let Some(gm) = gj {
        out.push((gm, g[j].1.mul(b).neg()));
        out.extend(g[j + 1..].iter().map(|(m, c)| (m.mul(mono), c.mul(b).neg())));
    }
    out
}

fn divide_out<C: Coeff>(rows: [&mut Row<C>; 2]) {
    let coeffs: Vec<&C> = rows.iter().flat_map(|r| r.iter().map(|(_, c)| c)).collect();
    if let Some(d) = C::primitive_divisor(&coeffs) {
        let inv = d.inv().expect("nonzero content");
        for row in rows {
            for (_, c) in row.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

fn find_reducer<'a, C: Coeff>(m: &Monomial, basis: &'a [&'a [(Monomial, C)]]) -> Option<&'a [(Monomial, C)]> {
    basis.iter().copied().find(|g| g[0].0.divides(m))
}

/// Full reduction of `f` by `basis` (every row nonzero), up to a nonzero scalar.
///
/// With `exact` the multipliers are field quotients, so the result is the true
/// normal form; otherwise the fraction-free rule is used and the result is
/// primitive.
pub(crate) fn reduce_row<C: Coeff>(
    f: Row<C>,
    basis: &[&[(Monomial, C)]],
    order: &MonomialOrder,
    exact: bool,
) -> Row<C> {
    reduce_row_until(f, basis, order, exact, None).expect("no deadline")
}

/// As [`reduce_row`], giving up with `None` once `deadline` has passed.
fn reduce_row_until<C: Coeff>(
    f: Row<C>,
    basis: &[&[(Monomial, C)]],
    order: &MonomialOrder,
    exact: bool,
    deadline: Option<Instant>,
) -> Option<Row<C>> {
    let mut p = f;
    let mut rest: Row<C> = Vec::new();
    let mut steps = 0u32;
    while !p.is_empty() {
        steps = steps.wrapping_add(1);
        if steps % 64 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
            return None;
        }
        let (m, c) = (&p[0].0, &p[0].1);
        match find_reducer(m, basis) {
            Some(g) => {
                let mono = g[0].0.quotient_of(m).expect("divisor");
                let (a, b) = if exact {
                    let inv = g[0].1.inv().expect("nonzero leading coefficient");
                    (c.one_like(), c.mul(&inv))
                } else {
                    C::cancel_multipliers(&g[0].1, c)
                };
                p = combine(&p[1..], &a, &b, &mono, &g[1..], order);
                if !a.is_one() {
                    for (_, r) in rest.iter_mut() {
                        *r = r.mul(&a);
                    }
                }
                if !exact {
                    divide_out([&mut p, &mut rest]);
                }
            }
            None => {
                let lead = p.remove(0);
                rest.push(lead);
            }
        }
    }
    Some(rest)
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

/// State of one completion run.
pub(crate) struct Completion<'o, C: Coeff> {
    order: &'o MonomialOrder,
    polys: Vec<Row<C>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    pub(crate) stats: GbStats,
}

pub(crate) enum Outcome<C: Coeff> {
    Basis(Vec<Row<C>>),
    /// A nonzero constant entered the basis.
    Unit(C),
}

impl<'o, C: Coeff> Completion<'o, C> {
    pub(crate) fn new(order: &'o MonomialOrder) -> Self {
        Completion {
            order,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            stats: GbStats::default(),
        }
    }

    fn lead(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn active_rows(&self) -> Vec<&[(Monomial, C)]> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.as_slice())
            .collect()
    }

    /// Gebauer-Möller update for a new basis element.
    fn insert(&mut self, h: Row<C>) {
        let hi = self.polys.len();
        let hlead = h[0].0.clone();
        self.polys.push(h);
        self.active.push(true);

        let mut fresh: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lcm = hlead.lcm(self.lead(g));
                Pair {
                    i: g,
                    j: hi,
                    degree: lcm.total_degree(),
                    lcm,
                }
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = fresh.pop() {
            let coprime = hlead.is_coprime(self.lead(p.i));
            let dominated = fresh
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            } else {
                self.stats.pairs_pruned += 1;
            }
        }
        // coprime leading monomials: the S-polynomial reduces to zero
        let before = kept.len();
        kept.retain(|p| !hlead.is_coprime(self.lead(p.i)));
        self.stats.pairs_pruned += (before - kept.len()) as u64;

        // old pairs made redundant by h
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let redundant = hlead.divides(&p.lcm)
                && hlead.lcm(self.lead(p.i)) != p.lcm
                && hlead.lcm(self.lead(p.j)) != p.lcm;
            if redundant {
                self.stats.pairs_pruned += 1;
            } else {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && hlead.divides(self.lead(g)) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.degree.cmp(&b.degree) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => order.compare(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Row<C> {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = f[0].0.quotient_of(&p.lcm).expect("lcm");
        let mg = g[0].0.quotient_of(&p.lcm).expect("lcm");
        let (a, b) = C::cancel_multipliers(&g[0].1, &f[0].1);
        // a*mf*f - b*mg*g with a*lc(f) == b*lc(g)
        let left: Row<C> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.mul(&a))).collect();
        combine(&left, &a.one_like(), &b, &mg, &g[1..], self.order)
    }

    fn check_limits(&self, limits: &GbLimits, row: &Row<C>) -> Result<(), Cutoff> {
        if let Some(max) = limits.max_pairs {
            if self.stats.pairs_processed > max {
                return Err(Cutoff::Pairs(max));
            }
        }
        if let Some(max) = limits.max_coeff_bits {
            let bits = row.iter().map(|(_, c)| c.bit_size()).max().unwrap_or(0);
            if bits > max {
                return Err(Cutoff::CoefficientBits(max));
            }
        }
        if let Some(deadline) = limits.deadline {
            if Instant::now() >= deadline {
                return Err(Cutoff::Deadline);
            }
        }
        Ok(())
    }

    fn normalize_row(row: &mut Row<C>) {
        let mut cs: Vec<C> = row.iter().map(|(_, c)| c.clone()).collect();
        C::normalize(&mut cs);
        for ((_, c), n) in row.iter_mut().zip(cs) {
            *c = n;
        }
    }

    fn accept(&mut self, mut row: Row<C>) -> Option<Outcome<C>> {
        if row.is_empty() {
            self.stats.zero_reductions += 1;
            return None;
        }
        Self::normalize_row(&mut row);
        let bits = row.iter().map(|(_, c)| c.bit_size()).max().unwrap_or(0);
        self.stats.max_coeff_bits = self.stats.max_coeff_bits.max(bits);
        if row[0].0.is_one() {
            return Some(Outcome::Unit(row[0].1.clone()));
        }
        self.insert(row);
        None
    }

    pub(crate) fn run(
        mut self,
        gens: Vec<Row<C>>,
        limits: &GbLimits,
    ) -> Result<(Outcome<C>, GbStats), (Cutoff, GbStats)> {
        // smaller generators first, each reduced by what is already there
        let mut gens: Vec<Row<C>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        gens.sort_by(|a, b| self.order.compare(&a[0].0, &b[0].0));
        for g in gens {
            let Some(r) = reduce_row_until(g, &self.active_rows(), self.order, false, limits.deadline) else {
                return Err((Cutoff::Deadline, self.stats));
            };
            if let Some(out) = self.accept(r) {
                return Ok((out, self.stats));
            }
        }
        while let Some(pair) = self.select() {
            self.stats.pairs_processed += 1;
            let s = self.spoly(&pair);
            let Some(r) = reduce_row_until(s, &self.active_rows(), self.order, false, limits.deadline) else {
                return Err((Cutoff::Deadline, self.stats));
            };
            if let Err(c) = self.check_limits(limits, &r) {
                return Err((c, self.stats));
            }
            if let Some(out) = self.accept(r) {
                return Ok((out, self.stats));
            }
        }
        let basis = self.finish();
        Ok((Outcome::Basis(basis), self.stats))
    }

    /// Minimal, interreduced, normalized basis sorted by leading monomial.
    fn finish(&mut self) -> Vec<Row<C>> {
        let mut min: Vec<Row<C>> = Vec::new();
        let mut idx: Vec<usize> = (0..self.polys.len()).filter(|&i| self.active[i]).collect();
        idx.sort_by(|&a, &b| self.order.compare(self.lead(a), self.lead(b)));
        for i in idx {
            if !min.iter().any(|g| g[0].0.divides(self.lead(i))) {
                min.push(self.polys[i].clone());
            }
        }
        let mut out = Vec::with_capacity(min.len());
        for k in 0..min.len() {
            let others: Vec<&[(Monomial, C)]> = min
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g.as_slice())
                .collect();
            let mut tail = reduce_row(min[k][1..].to_vec(), &others, self.order, true);
            let mut row = vec![min[k][0].clone()];
            // exact reduction keeps the leading coefficient fixed
            row.append(&mut tail);
            Self::normalize_row(&mut row);
            out.push(row);
        }
        out.sort_by(|a, b| self.order.compare(&b[0].0, &a[0].0));
        out
    }
}
