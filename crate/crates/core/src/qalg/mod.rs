//! Exact coefficient rings.

mod json;
pub mod series;
pub mod tpoly;

pub use series::{geometric, rat, ratio, Mismatch, QSeries, Rational, EXACT};
pub use tpoly::{linear_form, Monomial, TPoly, TermMismatch};
