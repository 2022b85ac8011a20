//! Helpers around `BigRational`: parsing, formatting and exact roots.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    let m = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(m)
    } else {
        Rational::new(BigInt::one(), m)
    }
}

/// `base^e` for an integer exponent (negative allowed for nonzero base).
pub fn powi(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
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

/// Always `"num/den"`, with the sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn exact_uint_root(n: &BigUint, v: u32) -> Option<BigUint> {
    let r = n.nth_root(v);
    if num_traits::pow(r.clone(), v as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// The exact nonnegative `v`-th root of `r`, when `r >= 0` is a perfect `v`-th power.
pub fn checked_root(r: &Rational, v: u32) -> Option<Rational> {
    if r.is_negative() || v == 0 {
        return None;
    }
    if v == 1 {
        return Some(r.clone());
    }
    let n = exact_uint_root(r.numer().magnitude(), v)?;
    let d = exact_uint_root(r.denom().magnitude(), v)?;
    Some(Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// `x^e` as an exact rational when it is one (`x >= 0`).
pub fn checked_pow(x: &Rational, e: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return if e.is_positive() {
            Some(Rational::zero())
        } else if e.is_zero() {
            Some(Rational::one())
        } else {
            None
        };
    }
    let u = e.numer().to_i64()?;
    let v = e.denom().to_u32()?;
    checked_root(&powi(x, u), v)
}

/// Floor of log2 of a positive rational, as an integer.
pub fn floor_log2(r: &Rational) -> i64 {
    debug_assert!(r.is_positive());
    let n = r.numer().bits() as i64;
    let d = r.denom().bits() as i64;
    let mut e = n - d;
    // adjust so that 2^e <= r < 2^(e+1)
    while pow2(e) > *r {
        e -= 1;
    }
    while pow2(e + 1) <= *r {
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(checked_root(&ratio(4, 9), 2), Some(ratio(2, 3)));
        assert_eq!(checked_root(&ratio(2, 1), 2), None);
        assert_eq!(checked_pow(&ratio(1, 4), &ratio(3, 2)), Some(ratio(1, 8)));
        assert_eq!(checked_pow(&ratio(4, 1), &ratio(-1, 2)), Some(ratio(1, 2)));
        assert_eq!(checked_pow(&int(0), &ratio(-1, 2)), None);
    }

    #[test]
    fn log2_bounds() {
        assert_eq!(floor_log2(&ratio(1, 3)), -2);
        assert_eq!(floor_log2(&int(8)), 3);
        assert_eq!(floor_log2(&ratio(9, 8)), 0);
    }
}
