//! Exact scalars, univariate polynomials in `t`, and determinants.
//!
//! Scalars are arbitrary-precision rationals kept in lowest terms. There is
//! no floating point anywhere in this crate.

mod det;
mod matrix;
mod poly;

pub use det::{det, det_cofactor, det_integer, det_poly};
pub(crate) use det::{det_i128, det_i64};
pub use matrix::Matrix;
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("bad rational {text:?}: {e}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|e| bad(&e))?;
            let q: BigInt = q.trim().parse().map_err(|e| bad(&e))?;
            if q.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|e| bad(&e))?)),
    }
}

/// Parses a comma separated list of rationals.
pub fn parse_rationals(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// Sign of `x` as `-1`, `0` or `1`.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `(x)_k = x(x−1)⋯(x−k+1)`.
pub fn falling_factorial(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (x - int(i as i64)))
}

/// `x(x+1)⋯(x+k−1)`.
pub fn rising_factorial(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (x + int(i as i64)))
}

/// `(x|Y)_k = (x−y_1)⋯(x−y_k)`.
pub fn shifted_power(x: &Rational, y: &[Rational], k: usize) -> Result<Rational> {
    if y.len() < k {
        return Err(Error::InsufficientYSequence { needed: k, got: y.len() });
    }
    Ok(y[..k].iter().fold(Rational::one(), |acc, yj| acc * (x - yj)))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)` for nonnegative `n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
