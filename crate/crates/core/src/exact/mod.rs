//! Unbounded integers, exact rationals, and dense integer polynomials.

mod poly;
mod rational;

pub use num_bigint::BigInt as Integer;
pub use poly::IntPoly;
pub use rational::Rational;

use crate::error::{domain, Result};
use crate::sequences::fibonacci;

/// Rising factorial `a (a+1) ... (a+m-1)`, continued to negative `m` as
/// `Gamma(a+m) / Gamma(a) = 1 / ((a-1)(a-2)...(a+m))`.
///
/// `m = 0` gives 1. For `m < 0` every factor in the denominator must be
/// positive.
pub fn rising_factorial_ext(a: i64, m: i64) -> Result<Rational> {
    if a < 1 {
        return Err(domain(format!("rising factorial base {a} < 1")));
    }
    if m >= 0 {
        let prod = (0..m).fold(Integer::from(1), |acc, t| acc * (a + t));
        return Ok(Rational::from_integer(prod));
    }
    if a + m < 1 {
        return Err(domain(format!(
            "rising factorial ({a})_{m} has a non-positive factor"
        )));
    }
    let den = (1..=-m).fold(Integer::from(1), |acc, t| acc * (a - t));
    Rational::from_integer(den).inv()
}

/// Fibonacci analogue of [`rising_factorial_ext`]:
/// `F_a F_{a+1} ... F_{a+m-1}` for `m >= 0`, and `1 / (F_{a-1} ... F_{a+m})`
/// for `m < 0`.
pub fn fib_rising_ext(a: i64, m: i64) -> Result<Rational> {
    if a < 1 {
        return Err(domain(format!("Fibonacci product base {a} < 1")));
    }
    if m >= 0 {
        let mut prod = Integer::from(1);
        for t in 0..m {
            prod *= fibonacci(a + t)?;
        }
        return Ok(Rational::from_integer(prod));
    }
    if a + m < 1 {
        return Err(domain(format!(
            "Fibonacci product at base {a}, length {m} reaches F_0"
        )));
    }
    let mut den = Integer::from(1);
    for t in 1..=-m {
        den *= fibonacci(a - t)?;
    }
    Rational::from_integer(den).inv()
}
