//! Exact integer and rational linear algebra.
//!
//! Nothing in this crate uses floating point; every identity is checked with
//! arbitrary-precision integers or rationals.

pub mod arith;
mod congruence;
mod matrix;
mod normal_form;

pub use congruence::{congruence_diagonalize, signature_of, Signature};
pub use matrix::{IntMatrix, Matrix, RationalMatrix};
pub use normal_form::{hnf, snf, solve_integer, SnfDecomposition};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `x` reduced into `[0, m)` for a positive rational modulus `m`.
pub fn rem_euclid(x: &Rational, m: &Rational) -> Rational {
    let q = (x / m).floor();
    x - q * m
}
