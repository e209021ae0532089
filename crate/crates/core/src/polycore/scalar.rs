//! Coefficient domains: exact rationals and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational coefficients, always stored in lowest terms with a positive denominator.
pub type Q = BigRational;

/// Largest prime below 2^62; the default modulus for the modular fast path.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// Arithmetic required of polynomial coefficients.
///
/// Elements carry their own domain (the modulus, for prime fields), so constants
/// are built relative to an existing element with the `*_like` constructors.
pub trait Coeff:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_bigint_like(&self, n: &BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// Returns `(a, b)` with `a * c == b * lead` and `a != 0`, so that
    /// `a*f - b*m*g` cancels the term `c*m*lm(g)` of `f`.
    fn cancel_multipliers(lead: &Self, c: &Self) -> (Self, Self);

    /// Rescales a coefficient list (leading coefficient first) into the canonical
    /// representative of its projective class: primitive integers with a positive
    /// leading coefficient over Q, monic over GF(p).
    fn normalize(coeffs: &mut [Self]);

    /// Size measure used by coefficient-growth cutoffs.
    fn bit_size(&self) -> u64;

    /// A common factor worth dividing out of an intermediate coefficient list, if any.
    fn primitive_divisor(_coeffs: &[&Self]) -> Option<Self> {
        None
    }

    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }
}

impl Coeff for Q {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn zero_like(&self) -> Self {
        Q::zero()
    }

    fn one_like(&self) -> Self {
        Q::one()
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Q::from_integer(n.clone())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn cancel_multipliers(lead: &Self, c: &Self) -> (Self, Self) {
        if lead.is_integer() && c.is_integer() {
            let g = lead.numer().gcd(c.numer());
            let a = lead.numer() / &g;
            let b = c.numer() / &g;
            (Q::from_integer(a), Q::from_integer(b))
        } else {
            (Q::one(), c / lead)
        }
    }

    fn normalize(coeffs: &mut [Self]) {
        if coeffs.is_empty() {
            return;
        }
        let content = rational_content(coeffs.iter());
        let sign_flip = Signed::is_negative(&coeffs[0]);
        for c in coeffs.iter_mut() {
            *c = &*c / &content;
            if sign_flip {
                *c = -&*c;
            }
        }
    }

    fn bit_size(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn primitive_divisor(coeffs: &[&Self]) -> Option<Self> {
        let content = rational_content(coeffs.iter().copied());
        if One::is_one(&content) {
            None
        } else {
            Some(content)
        }
    }
}

/// Positive rational `c` such that every `x / c` is an integer and the quotients are coprime.
pub fn rational_content<'a>(coeffs: impl Iterator<Item = &'a Q>) -> Q {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Q::one();
    }
    Q::new(num, den)
}

/// Element of GF(p) for an odd prime `p < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus > 2 && modulus < (1 << 63));
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    /// Reduces a rational number modulo `p`; `None` when `p` divides the denominator.
    pub fn from_rational(q: &Q, modulus: u64) -> Option<Self> {
        let m = BigInt::from(modulus);
        let num = q.numer().mod_floor(&m).to_u64()?;
        let den = q.denom().mod_floor(&m).to_u64()?;
        let den = Fp::new(den, modulus).inv()?;
        Some(Fp::new(num, modulus).mul(&den))
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) {
        debug_assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn zero_like(&self) -> Self {
        Fp::new(0, self.modulus)
    }

    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus)
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self {
        let v = n
            .mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("reduced value fits in u64");
        Fp::new(v, self.modulus)
    }

    fn add(&self, other: &Self) -> Self {
        self.check(other);
        let s = self.value as u128 + other.value as u128;
        Fp::new((s % self.modulus as u128) as u64, self.modulus)
    }

    fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.modulus - (other.value - self.value)
        };
        Fp::new(v, self.modulus)
    }

    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.value as u128 * other.value as u128;
        Fp::new((p % self.modulus as u128) as u64, self.modulus)
    }

    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp::new(self.modulus - self.value, self.modulus)
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    fn cancel_multipliers(lead: &Self, c: &Self) -> (Self, Self) {
        let inv = lead.inv().expect("nonzero leading coefficient");
        (lead.one_like(), c.mul(&inv))
    }

    fn normalize(coeffs: &mut [Self]) {
        if let Some(first) = coeffs.first() {
            let inv = first.inv().expect("nonzero leading coefficient");
            for c in coeffs.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }

    fn bit_size(&self) -> u64 {
        64 - self.modulus.leading_zeros() as u64
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
