//! Exact truncated Laurent series.
//!
//! A [`TruncSeries`] stores a dense window of coefficients for the exponents
//! `valuation..=order`; everything above `order` is unknown. All arithmetic
//! propagates the truncation order so that no reported coefficient can have
//! been touched by the unknown tail.

mod coefficient;
mod monomial;
mod sparse;
mod trunc;

pub use coefficient::Coefficient;
pub use monomial::{Monomial, Sign};
pub use sparse::SparsePoly;
pub use trunc::TruncSeries;
