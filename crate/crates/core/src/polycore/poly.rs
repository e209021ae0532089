//! Sparse distributed polynomials.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::registry::VarRegistry;
use super::scalar::{rational_content, Coeff, Fp, Q};
use super::PolyError;

/// Total degree with a distinguished value for the zero polynomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial over a shared [`VarRegistry`]: a map from monomials to nonzero
/// coefficients, stored as a term list in decreasing canonical monomial order.
#[derive(Clone)]
pub struct Polynomial<C: Coeff = Q> {
    registry: Arc<VarRegistry>,
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.registry, &other.registry) && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Polynomial<C> {}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(registry: &Arc<VarRegistry>) -> Self {
        Polynomial {
            registry: registry.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(registry: &Arc<VarRegistry>, c: C) -> Self {
        Self::from_terms(registry, [(Monomial::one(), c)])
    }

    pub fn monomial(registry: &Arc<VarRegistry>, m: Monomial, c: C) -> Self {
        Self::from_terms(registry, [(m, c)])
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        registry: &Arc<VarRegistry>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            registry: registry.clone(),
            terms,
        }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    fn same_registry(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.registry, &other.registry) {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_registry(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_registry(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &C| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), fix(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        Polynomial {
            registry: self.registry.clone(),
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_registry(other)?;
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(Polynomial {
            registry: self.registry.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.registry);
        }
        Polynomial {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), a.mul(c)))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        // multiplication by a monomial is monotone for the canonical order only up to
        // width changes, so re-sort
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            registry: self.registry.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let one = match self.terms.first() {
            Some((_, c)) => c.one_like(),
            None => {
                return if e == 0 {
                    panic!("0^0 of a polynomial is undefined without a coefficient domain")
                } else {
                    self.clone()
                }
            }
        };
        let mut acc = Polynomial::constant(&self.registry, one);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Maximum total degree in the given block of variables.
    pub fn degree_in(&self, vars: &[usize]) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(vars))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in_var(&self, var: usize) -> Degree {
        self.degree_in(&[var])
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, C), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0))
            .cloned()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.support().collect::<Vec<_>>())
            .collect()
    }

    pub fn involves_only(&self, vars: &BTreeSet<usize>) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.support().all(|v| vars.contains(&v)))
    }

    /// Replaces each listed variable by a scalar value.
    pub fn substitute(&self, values: &[(usize, C)]) -> Self {
        let lookup: HashMap<usize, &C> = values.iter().map(|(v, c)| (*v, c)).collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            for (v, e) in m.iter() {
                if let Some(val) = lookup.get(&v) {
                    for _ in 0..e {
                        coeff = coeff.mul(val);
                    }
                    rest = rest.without(v).0;
                }
            }
            (rest, coeff)
        });
        Polynomial::from_terms(&self.registry, terms)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            if e == 0 {
                return None;
            }
            let k = c.from_bigint_like(&BigInt::from(e));
            Some((m.with_exp(var, e - 1), c.mul(&k)))
        });
        Polynomial::from_terms(&self.registry, terms)
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(&self.registry, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Moves the polynomial onto another registry that is known to share index meaning.
    pub fn with_registry(&self, registry: &Arc<VarRegistry>) -> Self {
        Polynomial {
            registry: registry.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Scales so that the leading coefficient under `order` is canonical
    /// (see [`Coeff::normalize`]).
    pub fn normalized(&self, order: &MonomialOrder) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut sorted = self.terms.clone();
        sorted.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut coeffs: Vec<C> = sorted.iter().map(|(_, c)| c.clone()).collect();
        C::normalize(&mut coeffs);
        Polynomial::from_terms(
            &self.registry,
            sorted.into_iter().zip(coeffs).map(|((m, _), c)| (m, c)),
        )
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl Polynomial<Q> {
    pub fn from_int(registry: &Arc<VarRegistry>, n: i64) -> Self {
        Polynomial::constant(registry, Q::from_integer(BigInt::from(n)))
    }

    pub fn var(registry: &Arc<VarRegistry>, index: usize) -> Self {
        Polynomial::monomial(registry, Monomial::var(index, 1), Q::one())
    }

    /// Positive rational content and the primitive integer part, `self = content * part`.
    pub fn content_and_primitive(&self) -> (Q, Self) {
        if self.is_zero() {
            return (Q::one(), self.clone());
        }
        let content = rational_content(self.terms.iter().map(|(_, c)| c));
        let part = Polynomial {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &content)).collect(),
        };
        (content, part)
    }

    /// Reduction modulo a prime; `None` if a denominator vanishes.
    pub fn to_modular(&self, modulus: u64) -> Option<Polynomial<Fp>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = Fp::from_rational(c, modulus)?;
            if !v.is_zero() {
                terms.push((m.clone(), v));
            }
        }
        Some(Polynomial {
            registry: self.registry.clone(),
            terms,
        })
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bit_size()).max().unwrap_or(0)
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let order = MonomialOrder::grevlex((0..self.registry.len()).collect());
        let mut sorted: Vec<&(Monomial, C)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| order.compare(&b.0, &a.0));
        for (i, (m, c)) in sorted.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", m.display(&self.registry))?;
            } else {
                write!(f, "{}*{}", mag, m.display(&self.registry))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    /// Panics on registry mismatch; use [`Polynomial::checked_add`] to handle it.
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("registry mismatch")
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("registry mismatch")
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("registry mismatch")
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn setup() -> (Arc<VarRegistry>, Polynomial, Polynomial, Polynomial) {
        let reg = VarRegistry::new();
        let x = Polynomial::var(&reg, reg.intern("x", 0));
        let y = Polynomial::var(&reg, reg.intern("y", 0));
        let z = Polynomial::var(&reg, reg.intern("z", 0));
        (reg, x, y, z)
    }

    fn c(reg: &Arc<VarRegistry>, n: i64) -> Polynomial {
        Polynomial::from_int(reg, n)
    }

    #[test]
    fn addition_examples() {
        let (reg, x, y, _) = setup();
        assert_eq!(&(&x + &y) + &(&x - &y), &c(&reg, 2) * &x);
        let p = &(&x * &x) - &c(&reg, 1);
        assert_eq!(&p + &Polynomial::zero(&reg), p);
        assert_eq!(&p + &c(&reg, 1), &x * &x);
    }

    #[test]
    fn multiplication_examples() {
        let (reg, x, y, _) = setup();
        let one = c(&reg, 1);
        assert_eq!(&(&x + &one) * &(&x - &one), &(&x * &x) - &one);
        let p = &(&x * &y) + &c(&reg, 3);
        assert_eq!(&p * &one, p);
        let s = &x + &y;
        let expected = &(&(&x * &x) + &(&c(&reg, 2) * &(&x * &y))) + &(&y * &y);
        assert_eq!(&s * &s, expected);
        assert_eq!((&s * &s).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let (_, x, _, _) = setup();
        let other = VarRegistry::new();
        let u = Polynomial::var(&other, other.intern("x", 0));
        assert_eq!(x.checked_add(&u), Err(PolyError::RegistryMismatch));
        assert_eq!(x.checked_mul(&u), Err(PolyError::RegistryMismatch));
    }

    #[test]
    fn leading_terms() {
        let (reg, x, y, _) = setup();
        let grevlex = MonomialOrder::grevlex(vec![0, 1]);
        let lex = MonomialOrder::lex(vec![0, 1]);
        let p = &(&(&x * &x) * &y) + &(&x * &(&y * &y));
        let (m, k) = p.leading_term(&grevlex).unwrap();
        assert_eq!(m, Monomial::from_dense(vec![2, 1]));
        assert!(Coeff::is_one(&k));
        let q = &x + &(&y * &y);
        assert_eq!(q.leading_term(&lex).unwrap().0, Monomial::var(0, 1));
        let five = c(&reg, 5);
        assert_eq!(
            five.leading_term(&lex).unwrap(),
            (Monomial::one(), Q::from_integer(5.into()))
        );
        assert_eq!(
            Polynomial::<Q>::zero(&reg).leading_term(&lex),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn degrees() {
        let (reg, x, y, z) = setup();
        // (1 - y^2) z - y, degree in {y}
        let one = c(&reg, 1);
        let p = &(&(&one - &(&y * &y)) * &z) - &y;
        assert_eq!(p.degree_in(&[1]), Degree::Finite(2));
        assert_eq!(c(&reg, 7).total_degree(), Degree::Finite(0));
        assert_eq!(Polynomial::<Q>::zero(&reg).total_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        let xp = Polynomial::var(&reg, reg.intern("x", 1));
        let q = &(&xp * &(&y * &y)) + &(&x * &(&x * &x));
        assert_eq!(q.degree_in(&[0, 3]), Degree::Finite(3));
    }

    #[test]
    fn substitution_and_partials() {
        let (reg, x, y, _) = setup();
        let p = &(&(&x * &x) * &y) - &c(&reg, 1);
        let q = p.substitute(&[(1, Q::from_integer(3.into()))]);
        assert_eq!(q, &(&c(&reg, 3) * &(&x * &x)) - &c(&reg, 1));
        assert_eq!(p.partial(0), &c(&reg, 2) * &(&x * &y));
    }

    #[test]
    fn display_signs() {
        let (reg, x, y, _) = setup();
        let p = &(&c(&reg, -2) * &(&x * &x)) + &(&(&y - &c(&reg, 17)) + &(&c(&reg, -8) * &(&x * &y)));
        assert_eq!(p.to_string(), "-2*x^2 - 8*x*y + y - 17");
    }

    type Terms = Vec<(Vec<u32>, i64)>;

    fn terms() -> impl Strategy<Value = Terms> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6), 0..5)
    }

    fn build(reg: &Arc<VarRegistry>, ts: Terms) -> Polynomial {
        Polynomial::from_terms(
            reg,
            ts.into_iter()
                .map(|(e, k)| (Monomial::from_dense(e), Q::from_integer(k.into()))),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(ta in terms(), tb in terms(), tc in terms()) {
            let reg = VarRegistry::new();
            for v in ["x", "y", "z"] {
                reg.intern(v, 0);
            }
            let (a, b, c) = (build(&reg, ta), build(&reg, tb), build(&reg, tc));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(
                    (&a * &b).total_degree().finite().unwrap(),
                    a.total_degree().finite().unwrap() + b.total_degree().finite().unwrap()
                );
            }
            let (content, part) = a.content_and_primitive();
            prop_assert_eq!(part.scale(&content), a);
        }
    }
}
