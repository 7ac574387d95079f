//! Exact rationals and the small amount of parsing the configs need.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Parses `"3"`, `"-2/7"` or a finite decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = frac.len() as u32;
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let w: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let f: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().map_err(|_| bad())? };
        let scale = BigInt::from(10u32).pow(digits);
        let mag = w * &scale + f;
        let num = if negative { -mag } else { mag };
        return Ok(Rational::new(num, scale));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Parses a probability in `[0, 1]`.
pub fn parse_probability(s: &str) -> Result<Rational> {
    let r = parse_rational(s)?;
    if r.is_negative() || r > Rational::one() {
        return Err(Error::InvalidRational(format!("{s} is not in [0,1]")));
    }
    Ok(r)
}

/// Parses a real number to `digits` decimal digits after the point.
///
/// Accepts sums of terms, each a rational literal or `sqrt(q)` with `q` a
/// nonnegative rational literal: `"sqrt(2)-1"`, `"1/2 + sqrt(5)/1"` is not
/// supported but `"sqrt(5) - 3/2"` is. Square roots are truncated towards
/// zero at `digits` digits; rational terms are kept exact.
pub fn parse_real(s: &str, digits: u32) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let mut total = Rational::zero();
    let mut rest = s.trim();
    let mut sign = 1i32;
    if rest.is_empty() {
        return Err(bad());
    }
    loop {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            continue;
        }
        let end = term_end(rest);
        if end == 0 {
            return Err(bad());
        }
        let term = rest[..end].trim();
        let value = if let Some(inner) = term.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) {
            sqrt_truncated(&parse_rational(inner)?, digits).ok_or_else(bad)?
        } else {
            parse_rational(term)?
        };
        if sign < 0 {
            total -= value;
        } else {
            total += value;
        }
        sign = 1;
        rest = &rest[end..];
        if rest.trim().is_empty() {
            break;
        }
    }
    Ok(total)
}

fn term_end(s: &str) -> usize {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return i,
            _ => {}
        }
    }
    s.len()
}

/// `⌊√q · 10^digits⌋ / 10^digits`.
pub fn sqrt_truncated(q: &Rational, digits: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let scale = BigUint::from(10u32).pow(digits);
    let num = q.numer().to_biguint()?;
    let den = q.denom().to_biguint()?;
    // √(n/d) = √(n·d)/d
    let root = (num * &den * &scale * &scale).sqrt();
    Some(Rational::new(BigInt::from(root), BigInt::from(den * scale)))
}

/// Truncates towards zero to `digits` decimal digits.
pub fn truncate_digits(q: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * Rational::from_integer(scale.clone())).trunc();
    Rational::new(scaled.to_integer(), scale)
}

pub fn ceil_to_u128(q: &Rational) -> Result<u128> {
    let c = q.ceil().to_integer();
    c.to_u128().ok_or_else(|| Error::Overflow(format!("{q} does not fit in u128")))
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serializes a rational as its [`format_rational`] string.
pub fn serialize_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}
