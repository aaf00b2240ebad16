//! Exact rationals and the small numeric abstraction shared by the exact and
//! floating-point evaluation paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Parses `"p/q"` or `"p"`. Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Parses β and checks `0 < β ≤ 1`.
pub fn parse_beta(s: &str) -> Result<Rational> {
    let beta = parse_rational(s)?;
    check_beta(&beta)?;
    Ok(beta)
}

pub fn check_beta(beta: &Rational) -> Result<()> {
    if !beta.is_positive() || *beta > Rational::one() {
        return Err(Error::BetaOutOfRange(beta.to_string()));
    }
    Ok(())
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Field operations needed by the bulk evaluators. Implemented for
/// [`Rational`] (authoritative) and `f64` (fast, non-authoritative).
pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn from_biguint(n: &BigUint) -> Self;
    /// `1 / Π factors`.
    fn inv_product(factors: &[usize]) -> Self;
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_biguint(n: &BigUint) -> Self {
        from_biguint(n)
    }
    fn inv_product(factors: &[usize]) -> Self {
        let den = factors
            .iter()
            .fold(BigInt::one(), |acc, &f| acc * BigInt::from(f));
        Rational::new(BigInt::one(), den)
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn from_biguint(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
    fn inv_product(factors: &[usize]) -> Self {
        factors.iter().fold(1.0, |acc, &f| acc / f as f64)
    }
}
