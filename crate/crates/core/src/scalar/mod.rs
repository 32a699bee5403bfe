//! Exact coefficient arithmetic: arbitrary-precision rationals, Laurent
//! polynomials in one formal variable `q`, and reduced rational functions
//! in `q` with canonical representatives and decidable equality.

mod laurent;
mod parse;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use parse::{parse_scalar, ScalarParseError};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Unified exact coefficient used throughout the crate. Plain rationals are
/// rational functions with constant numerator and denominator one.
pub type Scalar = RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
}

/// Shorthand for constructing a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}
