//! Multivariate Bernstein polynomials on the k-dimensional simplex.
//!
//! The crate provides the basis `B_{v,n}` in exact-rational and floating
//! arithmetic, the approximation operator `B_n(f | x)` with a convergence
//! harness, exact verification of the decomposition and symmetry identities,
//! and the q-deformed basis built from q-brackets `[x]_q = (1 - q^x)/(1 - q)`.

pub mod basis;
pub mod error;
pub mod identities;
pub mod multiindex;
pub mod operator;
pub mod qbernstein;
pub mod scalar;

pub use error::{Error, Result};
pub use multiindex::{enumerate, multinomial, BasisId, MultiIndex, SimplexPoint};
pub use scalar::{ratio, Rational, Scalar};
