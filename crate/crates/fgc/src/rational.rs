//! Exact rational numbers for edge costs, cut weights and dual values.
//!
//! `Rational` is an arbitrary-precision ratio in canonical reduced form with
//! a positive denominator, so equality and ordering are exact. Every cost
//! comparison in the crate goes through this type.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Rational `numer / denom`. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Renders in canonical form: `a` when the denominator is one, `a/b` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `a`, `a/b`, or a plain decimal such as `1.25` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((numer, denom)) = text.split_once('/') {
        let numer = BigInt::from_str(numer.trim())
            .map_err(|_| format!("bad numerator in {text:?}"))?;
        let denom = BigInt::from_str(denom.trim())
            .map_err(|_| format!("bad denominator in {text:?}"))?;
        if denom.is_zero() {
            return Err(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let whole = BigInt::from_str(whole.trim())
            .map_err(|_| format!("bad decimal in {text:?}"))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal in {text:?}"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| format!("bad decimal in {text:?}"))?;
        let numer = whole * &scale + BigInt::from(sign) * frac;
        return Ok(Rational::new(numer, scale));
    }
    let value = BigInt::from_str(text).map_err(|_| format!("bad number {text:?}"))?;
    Ok(Rational::from_integer(value))
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&ratio(8, 4)), "2");
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn round_trip_format_parse() {
        for value in [rat(0), rat(7), ratio(22, 7), ratio(-13, 6)] {
            assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }
    }

    proptest! {
        // Exactness: (a + b) - b == a, with no tolerance.
        #[test]
        fn addition_is_exact(an in -10_000i64..10_000, ad in 1i64..500,
                             bn in -10_000i64..10_000, bd in 1i64..500) {
            let a = ratio(an, ad);
            let b = ratio(bn, bd);
            prop_assert_eq!(&(&a + &b) - &b, a);
        }
    }
}
