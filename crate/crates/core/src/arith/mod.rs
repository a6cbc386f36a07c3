//! Exact scalars: big rationals, polynomials over ℚ in the parameters
//! `c`, `h`, `lambda`, and the fraction field of those polynomials.
//!
//! Nothing here ever rounds. Every coefficient in the crate is a
//! [`RatFunc`] in canonical form, so `==` decides mathematical equality.

mod binom;
mod parse;
mod poly;
mod ratfunc;

pub use binom::{binom, binom_int, binom_small};
pub use parse::{parse_scalar, scalar_expr, Cursor};
pub use poly::{Exps, Param, Poly, NPARAMS};
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Scalar type used for every coefficient of a vector.
pub type Coeff = RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter `{0}` has no value")]
    UnassignedParameter(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
