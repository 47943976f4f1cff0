//! Exact rationals and a few conversion helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Returns the value as `i64` if it is an integer that fits.
pub fn as_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_positive_integer(x: &Rational) -> bool {
    x.is_integer() && x.is_positive()
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Euclidean remainder of an integer-valued rational, `None` otherwise.
pub fn rem_euclid(x: &Rational, m: i64) -> Option<i64> {
    as_i64(x).map(|v| v.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational(" -1/3 ").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-2, 6)), "-1/3");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn integer_views() {
        assert_eq!(as_i64(&rat(6, 3)), Some(2));
        assert_eq!(as_i64(&rat(1, 3)), None);
        assert!(is_positive_integer(&int(1)));
        assert!(!is_positive_integer(&int(0)));
        assert_eq!(rem_euclid(&int(-2), 3), Some(1));
    }
}
