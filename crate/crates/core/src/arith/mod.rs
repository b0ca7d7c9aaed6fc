//! Exact arithmetic: rationals, polynomials in `y_1..y_n`, truncated series in
//! `u^{-1}` and rational linear algebra.

pub mod linalg;
pub mod poly;
pub mod rational;
pub mod series;

pub use poly::MultiPoly;
pub use rational::Rational;
pub use series::{series_div, series_mul, series_star, LaurentSeries};
