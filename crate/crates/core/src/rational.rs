//! Exact rational numbers.
//!
//! Every weight, right-hand side and linear-algebra entry in the crate is a
//! [`Rational`]: an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. There is no floating-point path anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"` or `"p/q"` (optional leading sign, surrounding whitespace
/// ignored). `field` names the input field in error messages.
pub fn parse(text: &str, field: &str) -> Result<Rational> {
    let err = |message: String| Error::Parse {
        field: field.to_string(),
        message,
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| err(format!("`{text}` is not a rational of the form p or p/q")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| err(format!("`{text}` is not a rational of the form p or p/q")))?;
    if den.is_zero() {
        return Err(err(format!("`{text}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

/// Converts to `i64` when the value is an integer in range.
pub fn to_i64(value: &Rational) -> Option<i64> {
    if !value.is_integer() {
        return None;
    }
    i64::try_from(value.numer()).ok()
}
