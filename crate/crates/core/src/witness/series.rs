use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polycore::Q;

/// Power series in `t` known up to a fixed number of coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Q>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        TruncatedSeries::new(vec![Q::zero(); len])
    }

    pub fn constant(c: Q, len: usize) -> Self {
        let mut s = TruncatedSeries::zero(len);
        if len > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `t^i e^(jt)`: the coefficient of `t^k` is `j^(k-i) / (k-i)!`.
    pub fn t_pow_exp(i: u32, j: u32, len: usize) -> Self {
        let mut coeffs = vec![Q::zero(); len];
        let mut term = Q::one();
        let j = Q::from_integer(BigInt::from(j));
        for (n, k) in (i as usize..len).enumerate() {
            if n > 0 {
                term = term * &j / Q::from_integer(BigInt::from(n));
            }
            coeffs[k] = term.clone();
        }
        TruncatedSeries { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn truncate(mut self, len: usize) -> Self {
        self.coeffs.truncate(len);
        self
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        TruncatedSeries::new((0..len).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        TruncatedSeries::new((0..len).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect())
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product, truncated to the shorter length.
    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = vec![Q::zero(); len];
        for (a, x) in self.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate().take(len - a) {
                out[a + b] += x * y;
            }
        }
        TruncatedSeries::new(out)
    }

    /// `d/dt`; one coefficient shorter.
    pub fn derivative(&self) -> Self {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn derivative_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |s, _| s.derivative())
    }
}
