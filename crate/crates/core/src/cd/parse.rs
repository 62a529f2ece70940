//! Element literals such as `1 + 2e3 - 1/2e10`.

use num_traits::{One, Signed, Zero};

use super::CDElement;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Parses an element literal. Whitespace is ignored; `e0` and bare rationals
/// both denote the real unit. With `level = None` the smallest level holding
/// every index is used.
pub fn parse_element(text: &str, level: Option<u32>) -> Result<CDElement> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty element literal".into()));
    }
    let mut terms: Vec<(Rational, usize)> = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for pos in 1..=bytes.len() {
        let boundary = pos == bytes.len()
            || ((bytes[pos] == b'+' || bytes[pos] == b'-') && bytes[pos - 1] != b'/');
        if boundary {
            terms.push(parse_term(&s[start..pos], text)?);
            start = pos;
        }
    }
    let max_index = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let level = match level {
        Some(l) => {
            if max_index >= (1usize << l) {
                return Err(Error::Parse(format!("index e{max_index} exceeds level {l}")));
            }
            l
        }
        None => usize::BITS - max_index.leading_zeros(),
    };
    let mut x = CDElement::zero(level);
    for (c, i) in terms {
        x.coeffs[i] += c;
    }
    Ok(x)
}

fn parse_term(term: &str, whole: &str) -> Result<(Rational, usize)> {
    let bad = || Error::Parse(format!("invalid term {term:?} in {whole:?}"));
    match term.split_once('e') {
        None => Ok((parse_rational(term)?, 0)),
        Some((coeff, index)) => {
            if index.is_empty() || !index.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let index: usize = index.parse().map_err(|_| bad())?;
            if index >= (1 << crate::config::LEVEL_CEILING) {
                return Err(bad());
            }
            let coeff = match coeff {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                c => parse_rational(c)?,
            };
            Ok((coeff, index))
        }
    }
}

pub(super) fn format_element(x: &CDElement) -> String {
    let mut out = String::new();
    for (i, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if i == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push('e');
            out.push_str(&i.to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
