use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// An exact dyadic rational `mantissa * 2^exponent`, kept with an odd mantissa.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Dyadic { mantissa, exponent: 0 };
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Dyadic {
            mantissa: mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn one() -> Self {
        Dyadic::new(BigInt::one(), 0)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic::new(self.mantissa.abs(), self.exponent)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    /// Exact when `r` is dyadic.
    pub fn try_from_rational(r: &Rational) -> Option<Self> {
        let d = r.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(r.numer().clone(), -(tz as i64)))
    }

    /// Largest multiple of `2^-prec` that is `<= r`.
    pub fn floor_at(r: &Rational, prec: i64) -> Self {
        let (n, d) = scaled(r, prec);
        Dyadic::new(n.div_floor(&d), -prec)
    }

    /// Smallest multiple of `2^-prec` that is `>= r`.
    pub fn ceil_at(r: &Rational, prec: i64) -> Self {
        let (n, d) = scaled(r, prec);
        Dyadic::new(n.div_ceil(&d), -prec)
    }

    /// Round toward -inf onto the `2^-prec` grid.
    pub fn round_down(&self, prec: i64) -> Self {
        if self.exponent >= -prec {
            return self.clone();
        }
        let shift = (-prec - self.exponent) as u64;
        // arithmetic shift floors for negative mantissas too
        Dyadic::new(&self.mantissa >> shift, -prec)
    }

    /// Round toward +inf onto the `2^-prec` grid.
    pub fn round_up(&self, prec: i64) -> Self {
        -(-self).round_down(prec)
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        Dyadic::new(self.mantissa.clone(), self.exponent + e)
    }

    pub fn min(self, o: Self) -> Self {
        if self <= o {
            self
        } else {
            o
        }
    }

    pub fn max(self, o: Self) -> Self {
        if self >= o {
            self
        } else {
            o
        }
    }

    /// Parses the `m*2^e` form (or a bare integer).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid dyadic {s:?}"));
        match s.split_once("*2^") {
            Some((m, e)) => {
                let m: BigInt = m.parse().map_err(|_| bad())?;
                let e: i64 = e.parse().map_err(|_| bad())?;
                Ok(Dyadic::new(m, e))
            }
            None => Ok(Dyadic::new(s.parse().map_err(|_| bad())?, 0)),
        }
    }

    /// Approximate value for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
}

fn scaled(r: &Rational, prec: i64) -> (BigInt, BigInt) {
    if prec >= 0 {
        (r.numer() << prec as u64, r.denom().clone())
    } else {
        (r.numer().clone(), r.denom() << (-prec) as u64)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl From<Dyadic> for String {
    fn from(d: Dyadic) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Dyadic {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Dyadic::parse(&s)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let e = self.exponent.min(o.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &o.mantissa << (o.exponent - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(o.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &o.mantissa << (o.exponent - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, o: &Dyadic) -> Dyadic {
        self + &(-o)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &o.mantissa, self.exponent + o.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    #[test]
    fn normal_form() {
        let d = Dyadic::new(BigInt::from(12), -4);
        assert_eq!(d.mantissa(), &BigInt::from(3));
        assert_eq!(d.exponent(), -2);
        assert_eq!(d.to_rational(), ratio(3, 4));
        assert_eq!(d.to_string(), "3*2^-2");
        assert_eq!(Dyadic::parse("3*2^-2").unwrap(), d);
    }

    #[test]
    fn rounding() {
        let third = ratio(1, 3);
        let lo = Dyadic::floor_at(&third, 4);
        let hi = Dyadic::ceil_at(&third, 4);
        assert_eq!(lo.to_rational(), ratio(5, 16));
        assert_eq!(hi.to_rational(), ratio(6, 16));
        let neg = Dyadic::floor_at(&-third, 4);
        assert_eq!(neg.to_rational(), ratio(-6, 16));
        let x = Dyadic::new(BigInt::from(-7), -3);
        assert_eq!(x.round_down(1).to_rational(), ratio(-1, 1));
        assert_eq!(x.round_up(1).to_rational(), ratio(-1, 2));
    }

    #[test]
    fn ordering_and_arith() {
        let a = Dyadic::new(BigInt::from(1), -1);
        let b = Dyadic::new(BigInt::from(3), -2);
        assert!(a < b);
        assert_eq!((&a + &b).to_rational(), ratio(5, 4));
        assert_eq!((&a * &b).to_rational(), ratio(3, 8));
        assert_eq!((&a - &a), Dyadic::zero());
        assert_eq!(Dyadic::try_from_rational(&ratio(5, 8)), Some(Dyadic::new(BigInt::from(5), -3)));
        assert_eq!(Dyadic::try_from_rational(&ratio(1, 3)), None);
    }
}
