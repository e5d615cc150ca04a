//! Parsing of user-supplied interval widths.

use num_traits::{Signed, Zero};
use qpoly_core::numeric::pow10_neg;
use qpoly_core::{BigInt, Error, Rational, Result};

/// Accepts `1e-20`, `3/1000` or `0.001`; the result must be positive.
pub fn parse_width(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("'{text}' is not a positive width"));
    let value = if let Some((mant, exp)) = t.split_once(['e', 'E']) {
        let exp: i32 = exp.parse().map_err(|_| bad())?;
        let m = parse_decimal(mant).ok_or_else(bad)?;
        let scale = pow10_neg(exp.unsigned_abs());
        if exp < 0 {
            m * scale
        } else {
            m / scale
        }
    } else if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Rational::new(n, d)
    } else {
        parse_decimal(t).ok_or_else(bad)?
    };
    if !value.is_positive() {
        return Err(bad());
    }
    Ok(value)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    if !frac.chars().all(|c| c.is_ascii_digit()) || int_part.starts_with(['+']) {
        return None;
    }
    let digits = format!("{int_part}{frac}");
    let n: BigInt = digits.parse().ok()?;
    Some(Rational::from_integer(n) * pow10_neg(frac.len() as u32))
}

/// Compact text for a width: `1e-20` for powers of ten, otherwise `p/q`.
pub fn format_width(w: &Rational) -> String {
    let ten = BigInt::from(10);
    if w.numer() == &BigInt::from(1) {
        let mut d = w.denom().clone();
        let mut exp = 0;
        while &d % &ten == BigInt::zero() {
            d /= &ten;
            exp += 1;
        }
        if d == BigInt::from(1) {
            return format!("1e-{exp}");
        }
    }
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpoly_core::numeric::ratio;

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_width("1e-20").unwrap(), pow10_neg(20));
        assert_eq!(parse_width("2.5E-3").unwrap(), ratio(1, 400));
        assert_eq!(parse_width("3/1000").unwrap(), ratio(3, 1000));
        assert_eq!(parse_width("0.001").unwrap(), ratio(1, 1000));
        assert_eq!(parse_width("1e2").unwrap(), Rational::from_integer(100.into()));
    }

    #[test]
    fn rejected_forms() {
        for bad in ["", "0", "-1e-3", "1/0", "abc", "1e", ".", "1.2.3"] {
            assert!(parse_width(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_width(&pow10_neg(30)), "1e-30");
        assert_eq!(format_width(&ratio(3, 7)), "3/7");
    }
}
