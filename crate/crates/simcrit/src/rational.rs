//! Exact rational scalars used throughout the engine.
//!
//! Dimension exponents, determinants, and unit scale factors are all
//! arbitrary-precision rationals. Floating point enters only at the
//! similarity-evaluation boundary, never in derivation.

use num::bigint::BigInt;
use num::traits::ToPrimitive;
use std::str::FromStr;

pub use num::BigRational as Rational;
// the numeric traits callers need to inspect Rational values
pub use num::traits::{One, Signed, Zero};

/// `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational, reduced. Panics if `d == 0`; intended for
/// literal constants in presets and tests.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("invalid rational `{0}`: expected an integer or `p/q`")]
    Malformed(String),
    #[error("invalid rational `{0}`: denominator is zero")]
    ZeroDenominator(String),
}

/// Parses fraction text such as `3`, `-1/3`, or `2/3`.
///
/// A Unicode minus sign is accepted as a synonym for `-`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let normalized = text.trim().replace('\u{2212}', "-");
    let malformed = || ParseRationalError::Malformed(text.to_string());
    let (numer_text, denom_text) = match normalized.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (normalized.as_str(), None),
    };
    let numer = BigInt::from_str(numer_text).map_err(|_| malformed())?;
    let denom = match denom_text {
        Some(d) => BigInt::from_str(d).map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Nearest `f64` to the rational (used only at evaluation time).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact `n`-th root of a non-negative rational, or `None` when the root
/// is irrational.
pub fn nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if n == 0 || r.is_negative() {
        return None;
    }
    let numer = r.numer().nth_root(n);
    let denom = r.denom().nth_root(n);
    if &num::pow::pow(numer.clone(), n as usize) == r.numer()
        && &num::pow::pow(denom.clone(), n as usize) == r.denom()
    {
        Some(Rational::new(numer, denom))
    } else {
        None
    }
}

/// Exact `base^exp` for rational `exp`, or `None` when the result is not
/// an exact rational (e.g. `1000^(1/2)`).
pub fn pow(base: &Rational, exp: &Rational) -> Option<Rational> {
    if base.is_zero() {
        return if exp.is_positive() {
            Some(Rational::zero())
        } else if exp.is_zero() {
            Some(Rational::one())
        } else {
            None
        };
    }
    let numer = exp.numer().to_i32()?;
    let denom = exp.denom().to_u32()?;
    let root = if denom == 1 {
        base.clone()
    } else {
        nth_root(base, denom)?
    };
    if numer == 0 {
        return Some(Rational::one());
    }
    let powered = num::pow::pow(root, numer.unsigned_abs() as usize);
    if numer < 0 {
        Some(powered.recip())
    } else {
        Some(powered)
    }
}
