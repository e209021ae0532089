//! Hilbert series of monomial ideals by pivot recursion.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polycore::Monomial;

/// Hilbert series `numerator(t) / (1 - t)^nvars` of `k[x_0..x_{n-1}] / M` for a
/// monomial ideal `M`, graded by total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub nvars: usize,
    /// Coefficients of `t^0, t^1, ...`, trailing zeros trimmed.
    pub numerator: Vec<BigInt>,
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn add_shifted(acc: &mut Vec<BigInt>, other: &[BigInt], shift: usize) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, BigInt::zero());
    }
    for (i, c) in other.iter().enumerate() {
        acc[i + shift] += c;
    }
}

/// Drops generators divisible by another one; duplicates collapse.
fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Monomial>) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![BigInt::one()];
        for g in &gens {
            let d = g.total_degree() as usize;
            let mut next = acc.clone();
            next.resize(acc.len() + d, BigInt::zero());
            for (i, c) in acc.iter().enumerate() {
                next[i + d] -= c;
            }
            acc = next;
        }
        return trim(acc);
    }

    // pivot on the variable shared by most generators, at its smallest exponent
    // among generators that are not pure powers of it
    let width = gens.iter().map(|g| g.width()).max().unwrap_or(0);
    let mut counts = vec![0usize; width];
    for g in &gens {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let var = (0..width).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nonempty");
    let exp = gens
        .iter()
        .filter(|g| g.exp(var) > 0 && g.support().count() > 1)
        .map(|g| g.exp(var))
        .min()
        .unwrap_or(1);
    let pivot = Monomial::var(var, exp);

    let mut sum: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).cloned().collect();
    sum.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| g.with_exp(var, g.exp(var).saturating_sub(exp)))
        .collect();

    let mut acc = numerator(minimize(sum));
    let quotient = numerator(minimize(colon));
    add_shifted(&mut acc, &quotient, exp as usize);
    trim(acc)
}

/// Hilbert series of the quotient by the monomial ideal generated by `gens`, in
/// variables `0..nvars`.
pub fn hilbert_series_monomial(gens: &[Monomial], nvars: usize) -> HilbertSeries {
    debug_assert!(gens.iter().all(|g| g.width() <= nvars));
    HilbertSeries {
        nvars,
        numerator: numerator(minimize(gens.to_vec())),
    }
}

impl HilbertSeries {
    /// True for the unit ideal, whose quotient is zero.
    pub fn is_trivial(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator with every `(1 - t)` factor removed, and how many were removed.
    pub fn reduced(&self) -> (Vec<BigInt>, usize) {
        let mut num = self.numerator.clone();
        let mut k = 0;
        while !num.is_empty() && num.iter().sum::<BigInt>().is_zero() {
            // synthetic division by (1 - t): q_i = sum_{j<=i} n_j
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut run = BigInt::zero();
            for c in &num[..num.len() - 1] {
                run += c;
                q.push(run.clone());
            }
            num = trim(q);
            k += 1;
        }
        (num, k)
    }

    /// Krull dimension of the quotient, or `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_trivial() {
            return None;
        }
        Some(self.nvars - self.reduced().1)
    }

    /// Multiplicity: the reduced numerator evaluated at 1.
    pub fn degree(&self) -> Option<BigInt> {
        if self.is_trivial() {
            return None;
        }
        Some(self.reduced().0.iter().sum())
    }

    /// Number of standard monomials of degree exactly `s`.
    pub fn coefficient(&self, s: usize) -> BigInt {
        // coefficient of t^k in (1-t)^-n is C(k+n-1, n-1)
        let n = self.nvars;
        let mut total = BigInt::zero();
        for (i, c) in self.numerator.iter().enumerate() {
            if i > s {
                break;
            }
            let k = s - i;
            let binom = if n == 0 {
                if k == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            } else {
                binomial(k + n - 1, n - 1)
            };
            total += c * binom;
        }
        total
    }

    /// Number of standard monomials of degree at most `s` (the affine Hilbert function).
    pub fn affine_function(&self, s: usize) -> BigInt {
        (0..=s).map(|k| self.coefficient(k)).sum()
    }

    /// Degree as a machine integer, for callers that need one.
    pub fn degree_u64(&self) -> Option<u64> {
        self.degree().and_then(|d| {
            debug_assert!(!d.is_negative());
            d.to_u64()
        })
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
