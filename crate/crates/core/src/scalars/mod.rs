//! Exact coefficient field Q(i)(s, lambda, t, ...) with `q = s^2`.

mod gauss;
mod gcd;
mod poly;
mod ratfunc;
mod star;
mod var;

pub use gauss::GaussianRational;
pub use gcd::{content_in, gcd};
pub use poly::{MPoly, Monomial};
pub use ratfunc::Scalar;
pub use star::StarMap;
pub use var::Var;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at substitution: denominator vanishes")]
    Pole,
}

/// Shorthand for `n/d` as a scalar.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}
