//! Exact coefficient arithmetic: rationals, sparse multivariate polynomials,
//! rational functions in the base coordinates, and small dense matrices over
//! the rational-function field.

mod matrix;
mod parse;
mod poly;
mod ratfunc;

pub use matrix::CoeffMatrix;
pub use parse::poly_parse;
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;

use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("division by the zero polynomial at position {position}")]
    DivisionByZero { position: usize },
    #[error("variable index {0} is not declared")]
    UndeclaredVariable(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
}
