//! Exact scalars (rationals and rational functions of the level `k`) and
//! dense exact linear algebra over them.

mod field;
mod matrix;
mod ratfunc;
mod rational;
mod unipoly;

pub use field::{gauss_jordan, Field, ScalarMode};
pub use matrix::{ExactMatrix, Rref, SpanSolution, SpanSolver};
pub use ratfunc::RatFuncK;
pub use rational::{bareiss_rref, Rational};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at k = {0}")]
    Pole(String),
    #[error("level must be a positive integer, got {0}")]
    InvalidLevel(String),
    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Generalized binomial coefficient `n choose r` for any integer `n`.
pub fn binomial(n: i64, r: u32) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..r as i64 {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> num_bigint::BigInt {
    (1..=n as u64).fold(num_bigint::BigInt::from(1), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial(5, 2), 10.into());
        assert_eq!(binomial(-2, 3), (-4).into());
        assert_eq!(binomial(-1, 4), 1.into());
        assert_eq!(binomial(3, 5), 0.into());
        assert_eq!(binomial(7, 0), 1.into());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1.into());
        assert_eq!(factorial(6), 720.into());
    }
}
