//! Power products over the variable registry.

use std::fmt;

use smallvec::SmallVec;

use super::registry::VarRegistry;

type Exps = SmallVec<[u32; 8]>;

/// Exponent vector indexed by registry position.
///
/// Stored densely with trailing zeros trimmed, so two monomials encoded against
/// registries of different lengths compare equal when they denote the same product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut exps: Exps = SmallVec::from_elem(0, index + 1);
        exps[index] = exp;
        Monomial::from_dense(exps)
    }

    pub fn from_dense(exps: impl Into<Exps>) -> Self {
        let mut m = Monomial { exps: exps.into() };
        m.trim();
        m
    }

    /// Builds a monomial from `(variable index, exponent)` pairs; repeated indices accumulate.
    pub fn from_sparse(pairs: &[(usize, u32)]) -> Self {
        let len = pairs.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut exps: Exps = SmallVec::from_elem(0, len);
        for &(i, e) in pairs {
            exps[i] += e;
        }
        Monomial::from_dense(exps)
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u32 {
        self.exps.get(index).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.exp(v)).sum()
    }

    /// Nonzero `(index, exponent)` pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter().map(|(i, _)| i)
    }

    /// One past the largest index with a nonzero exponent.
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (e, s) in exps.iter_mut().zip(short.exps.iter()) {
            *e = e.checked_add(*s).expect("exponent overflow");
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps.clone();
        for (e, s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= s;
        }
        let mut m = Monomial { exps };
        m.trim();
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let len = self.exps.len().max(other.exps.len());
        let exps: Exps = (0..len).map(|i| self.exp(i).max(other.exp(i))).collect();
        Monomial { exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let len = self.exps.len().min(other.exps.len());
        let exps: Exps = (0..len).map(|i| self.exp(i).min(other.exp(i))).collect();
        Monomial::from_dense(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Removes variable `index` entirely, returning its exponent.
    pub fn without(&self, index: usize) -> (Monomial, u32) {
        let e = self.exp(index);
        if e == 0 {
            return (self.clone(), 0);
        }
        let mut exps = self.exps.clone();
        exps[index] = 0;
        let mut m = Monomial { exps };
        m.trim();
        (m, e)
    }

    pub fn with_exp(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() <= index {
            exps.resize(index + 1, 0);
        }
        exps[index] = exp;
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    pub fn display<'a>(&'a self, registry: &'a VarRegistry) -> impl fmt::Display + 'a {
        MonomialDisplay {
            mono: self,
            registry,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(i, e)| {
                if e == 1 {
                    format!("v{i}")
                } else {
                    format!("v{i}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    registry: &'a VarRegistry,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.mono.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.registry.render(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimmed_equality() {
        let a = Monomial::from_dense(vec![1, 0, 0]);
        let b = Monomial::from_dense(vec![1]);
        assert_eq!(a, b);
        assert_eq!(a.width(), 1);
    }

    #[test]
    fn arithmetic() {
        let a = Monomial::from_sparse(&[(0, 2), (2, 1)]);
        let b = Monomial::from_sparse(&[(1, 1), (2, 3)]);
        assert_eq!(a.mul(&b), Monomial::from_dense(vec![2, 1, 4]));
        assert_eq!(a.lcm(&b), Monomial::from_dense(vec![2, 1, 3]));
        assert_eq!(a.gcd(&b), Monomial::from_dense(vec![0, 0, 1]));
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(2, 1).divides(&b));
        assert_eq!(
            Monomial::var(2, 1).quotient_of(&b),
            Some(Monomial::from_sparse(&[(1, 1), (2, 2)]))
        );
        assert_eq!(a.quotient_of(&b), None);
        assert_eq!(a.total_degree(), 3);
        assert_eq!(b.degree_in(&[2]), 3);
    }
}
