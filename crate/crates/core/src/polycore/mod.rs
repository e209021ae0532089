//! Exact sparse multivariate polynomial arithmetic.

mod monomial;
mod order;
mod poly;
mod registry;
mod scalar;

pub use monomial::Monomial;
pub use order::{Block, InnerOrder, MonomialOrder};
pub use poly::{Degree, Polynomial};
pub use registry::{DiffVariable, VarRegistry};
pub use scalar::{is_prime_u64, rational_content, Coeff, Fp, DEFAULT_PRIME, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials belong to different variable registries")]
    RegistryMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
}
