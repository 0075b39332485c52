//! Exact rational scalars.
//!
//! Every quantity in the engine is a [`Rat`]: an arbitrary-precision
//! fraction that is always kept in lowest terms with a positive denominator.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn half() -> Rat {
    rat(1, 2)
}

pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / int(2)
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rat, exp: u32) -> Rat {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn min(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Canonical `num/den` text, denominator always written (bit-exact formats).
pub fn fmt_exact(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses the literal grammar `-?[0-9]+(/[1-9][0-9]*)?`.
///
/// Unreduced input such as `2/4` is accepted and reduced.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::param(format!("invalid rational literal `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) || d.starts_with('0') {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
    };
    Ok(Rat::new(n, d))
}

/// Decimal projection with 12 significant digits. Approximate by design of
/// the CSV outputs; never used for decisions.
pub fn to_decimal(q: &Rat) -> String {
    let v = approx(q);
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{:.11e}", v)
    }
}

pub fn approx(q: &Rat) -> f64 {
    // Scale down huge numerators/denominators before converting.
    let n = q.numer();
    let d = q.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as usize;
    let n = n >> shift;
    let d = d >> shift;
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if b != 0.0 => a / b,
        _ => f64::NAN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_grammar() {
        assert_eq!(parse_rat("3/7").unwrap(), rat(3, 7));
        assert_eq!(parse_rat("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rat("12").unwrap(), int(12));
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_malformed() {
        for s in ["", "1/0", "1/07", "+3", "a/2", "1/", "/2", "1.5", "--1", "1/-2"] {
            assert!(parse_rat(s).is_err(), "{s}");
        }
    }

    #[test]
    fn exact_format_is_reduced() {
        assert_eq!(fmt_exact(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_exact(&int(0)), "0/1");
    }

    #[test]
    fn decimal_projection() {
        assert_eq!(to_decimal(&rat(1, 4)), "2.50000000000e-1");
        assert!((approx(&rat(15, 26)) - 15.0 / 26.0).abs() < 1e-15);
    }
}
