//! Exact arithmetic: symbols, multivariate polynomials over the rationals,
//! truncated ε-series and unreduced rational expressions.

mod parse;
mod poly;
mod rational;
mod series;
mod symbol;

pub use parse::parse_rational;
pub use poly::{Monomial, Poly};
pub use rational::RationalExpr;
pub use series::EpsSeries;
pub use symbol::{JetIndex, ParamName, Symbol, SymbolKind};

pub type Rational = num_rational::BigRational;

/// Shorthand for a rational constant `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
