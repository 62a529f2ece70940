//! Exact rational scalars.
//!
//! [`Rational`] is an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or an integer, allowing a leading `+` and surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.strip_prefix('+').unwrap_or(&s);
    if s.is_empty() {
        return Err(Error::Parse(format!("empty rational in {text:?}")));
    }
    if let Some((_, den)) = s.split_once('/') {
        if den.trim_start_matches(['-', '+']).chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
    }
    Rational::from_str(s).map_err(|_| Error::Parse(format!("invalid rational {text:?}")))
}

/// Integer square root of a non-negative rational, when it is a perfect square.
pub fn exact_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().sqrt();
    let d = value.denom().sqrt();
    if &(&n * &n) == value.numer() && &(&d * &d) == value.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Lossy double-precision view.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}
