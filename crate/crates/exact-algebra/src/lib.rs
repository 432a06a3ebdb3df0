//! Exact sparse algebra over the rationals: Laurent polynomials, rational
//! functions with canonical forms, and truncated Novikov series.

pub mod error;
pub mod gcd;
pub mod novikov;
pub mod parse;
pub mod poly;
pub mod rational;

pub use error::AlgebraError;
pub use gcd::{div_exact, gcd};
pub use novikov::{novikov_expand, NovikovSeries};
pub use parse::{parse, parse_poly};
pub use poly::{int, rat, var, Coeff, LaurentPoly, Monomial, Var};
pub use rational::RationalFunction;

/// Parse a literal that is known to be well formed; panics otherwise.
pub fn rf(s: &str) -> RationalFunction {
    parse(s).unwrap_or_else(|e| panic!("bad expression {s:?}: {e}"))
}
