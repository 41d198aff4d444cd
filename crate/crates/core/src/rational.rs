//! Exact rationals for download fractions and normalized radii.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a rational (expected forms like 3/4, 0.4 or 1)")]
pub struct ParseRationalError(pub String);

/// Parse `a/b`, a decimal such as `0.4`, or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err())?;
        let den: i64 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) || frac_part.len() > 15 {
        return Err(err());
    }
    let int: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| err())? };
    let scale = 10i64.pow(frac_part.len() as u32);
    let frac: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| err())? };
    let num = int.checked_mul(scale).and_then(|v| v.checked_add(frac)).ok_or_else(err)?;
    let r = Rational::new(num, scale);
    Ok(if neg { -r } else { r })
}

/// Decimal rendering with exactly `digits` fractional digits, rounding half
/// away from zero.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let scale = 10i128.pow(digits);
    let num = *r.numer() as i128;
    let den = *r.denom() as i128;
    let scaled = (num.abs() * scale * 2 + den) / (2 * den);
    let sign = if r.is_negative() && scaled != 0 { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{scaled}");
    }
    format!("{sign}{}.{:0width$}", scaled / scale, scaled % scale, width = digits as usize)
}

/// `a/b` or just `a` for integers.
pub fn to_fraction_string(r: &Rational) -> String {
    if r.denom() == &1 || r.is_zero() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::new(3, 4));
        assert_eq!(parse_rational("0.4").unwrap(), Rational::new(2, 5));
        assert_eq!(parse_rational("1").unwrap(), Rational::from_integer(1));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::new(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn renders_decimals() {
        assert_eq!(to_decimal(&Rational::new(3, 10), 6), "0.300000");
        assert_eq!(to_decimal(&Rational::new(1, 3), 6), "0.333333");
        assert_eq!(to_decimal(&Rational::new(2, 3), 6), "0.666667");
        assert_eq!(to_decimal(&Rational::new(1, 2_000_000), 6), "0.000001");
        assert_eq!(to_decimal(&Rational::from_integer(1), 6), "1.000000");
        assert_eq!(to_decimal(&Rational::new(-1, 4), 2), "-0.25");
        assert_eq!(to_fraction_string(&Rational::new(6, 8)), "3/4");
        assert_eq!(to_fraction_string(&Rational::from_integer(1)), "1");
    }
}
