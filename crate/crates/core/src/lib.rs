//! Elimination of unknowns in systems of differential-algebraic equations by
//! prolongation and relaxation.
//!
//! The crate is organized bottom-up:
//!
//! - [`polycore`]: exact sparse polynomials over Q and GF(p), monomial orders.
//! - [`groebner`]: Buchberger's algorithm, elimination ideals, dimension and degree.
//! - [`diffring`]: total derivatives, prolongation, order tuples.
//! - [`bounds`]: closed-form prolongation bounds.
//! - [`elim`]: the deterministic prolong-then-eliminate pipeline.
//! - [`randcheck`]: the Monte Carlo dominance test.
//! - [`witness`]: lower-bound witness systems and their series certificates.
//! - [`sysfile`]: the plain-text system format.

pub mod bounds;
pub mod diffring;
pub mod elim;
pub mod groebner;
pub mod polycore;
pub mod randcheck;
pub mod sysfile;
pub mod witness;
