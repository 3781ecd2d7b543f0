//! Exact q-series arithmetic and a verification harness for the positivity of
//! the Andrews–El Bachraoui series
//!
//! ```text
//! F_{k,1}(q) = sum_{n>=0} (q^{2n+2}, q^{2n+2k}; q^2)_inf / (q^{2n+1}; q^2)_inf^2 * q^{2n}
//! ```
//!
//! The crate is layered:
//!
//! - [`series`]: truncated Laurent series with exact rational coefficients.
//! - [`qobjects`]: q-Pochhammer symbols, Gaussian binomials and basic
//!   hypergeometric partial sums.
//! - [`aeb`]: every concrete series, transformation instance and
//!   decomposition used in the positivity argument.
//! - [`verify`]: equality/positivity reports and self-contained certificates.
//! - [`naive`]: a deliberately separate dense-vector expansion of `F_{k,1}`
//!   used as an independent oracle.
//!
//! `F_{k,1}` here carries the `q^{-1}` normalisation so that its constant
//! term is 1.

pub mod aeb;
mod error;
pub mod naive;
pub mod qobjects;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use series::{Coefficient, Monomial, Sign, SparsePoly, TruncSeries};
