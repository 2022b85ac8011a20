use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dyadic::Dyadic;
use super::exponent::Exponent;
use super::pow::rat_pow;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with dyadic endpoints.
///
/// Addition, subtraction and multiplication are exact (dyadics are a ring);
/// only roots, reciprocals and explicit rounding widen outward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "IntervalJson", try_from = "IntervalJson")]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi);
        DyadicInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        DyadicInterval { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::point(Dyadic::one())
    }

    /// Floor/ceiling of `r` on the `2^-k` grid; a point when `r` lies on it.
    pub fn from_rational(r: &Rational, k: u32) -> Self {
        DyadicInterval {
            lo: Dyadic::floor_at(r, k as i64),
            hi: Dyadic::ceil_at(r, k as i64),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn width_le_pow2(&self, k: u32) -> bool {
        self.width() <= Dyadic::pow2(-(k as i64))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.mantissa().is_positive() && !self.hi.mantissa().is_negative()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_subset_of(&self, o: &Self) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    pub fn hull(&self, o: &Self) -> Self {
        DyadicInterval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// Distance from the interval to a rational point (0 when contained).
    pub fn distance_to(&self, r: &Rational) -> Rational {
        let lo = self.lo.to_rational();
        let hi = self.hi.to_rational();
        if r < &lo {
            lo - r
        } else if r > &hi {
            r - hi
        } else {
            Rational::zero()
        }
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        DyadicInterval {
            lo: self.lo.mul_pow2(e),
            hi: self.hi.mul_pow2(e),
        }
    }

    /// Intersect with `[0, inf)`; for quantities known to be nonnegative.
    pub fn clamp_nonneg(&self) -> Self {
        let lo = self.lo.clone().max(Dyadic::zero());
        let hi = self.hi.clone().max(Dyadic::zero());
        DyadicInterval { lo, hi }
    }

    pub fn abs(&self) -> Self {
        if self.contains_zero() {
            DyadicInterval {
                lo: Dyadic::zero(),
                hi: self.mag(),
            }
        } else if self.lo.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        DyadicInterval {
            lo: &a.lo * &a.lo,
            hi: &a.hi * &a.hi,
        }
    }

    /// Outward rounding of both endpoints onto the `2^-prec` grid.
    pub fn round_out(&self, prec: u32) -> Self {
        DyadicInterval {
            lo: self.lo.round_down(prec as i64),
            hi: self.hi.round_up(prec as i64),
        }
    }

    /// Reciprocal of a strictly positive interval, rounded outward at `prec`.
    pub fn recip(&self, prec: u32) -> Result<Self> {
        if !self.lo.mantissa().is_positive() {
            return Err(Error::Invalid("reciprocal of an interval touching 0".into()));
        }
        let lo = Dyadic::floor_at(&self.hi.to_rational().recip(), prec as i64);
        let hi = Dyadic::ceil_at(&self.lo.to_rational().recip(), prec as i64);
        Ok(DyadicInterval { lo, hi })
    }

    /// `[lo^e, hi^e]` for a nonnegative interval and rational `e`.
    pub fn pow_rat(&self, e: &Rational, prec: u32) -> Result<Self> {
        if e.is_zero() {
            return Ok(Self::one());
        }
        if self.lo.is_negative() {
            return Err(Error::NegativeRoot);
        }
        let a = rat_pow(&self.lo.to_rational(), e, prec)?;
        let b = rat_pow(&self.hi.to_rational(), e, prec)?;
        if e.is_positive() {
            Ok(DyadicInterval { lo: a.lo, hi: b.hi })
        } else {
            Ok(DyadicInterval { lo: b.lo, hi: a.hi })
        }
    }

    /// `x^(1/p)` for a nonnegative interval.
    pub fn root(&self, p: &Exponent, prec: u32) -> Result<Self> {
        self.pow_rat(&p.recip(), prec)
    }

    /// Canonical nested output for target precision `k`.
    ///
    /// Expects a tight enclosure of width `<= 2^-(k+4)`; widens it by `2^-(k+2)` on
    /// the `2^-(k+4)` grid. Outputs for `k' > k` computed the same way are then
    /// contained in this one, and the width stays below `2^-k`. Points are kept.
    pub fn settle(&self, k: u32) -> Self {
        if self.is_point() {
            return self.clone();
        }
        let margin = Dyadic::pow2(-(k as i64 + 2));
        let g = k as i64 + 4;
        DyadicInterval {
            lo: &self.lo.round_down(g) - &margin,
            hi: &self.hi.round_up(g) + &margin,
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &DyadicInterval {
    type Output = DyadicInterval;
    fn add(self, o: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &DyadicInterval {
    type Output = DyadicInterval;
    fn sub(self, o: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Neg for &DyadicInterval {
    type Output = DyadicInterval;
    fn neg(self) -> DyadicInterval {
        DyadicInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &DyadicInterval {
    type Output = DyadicInterval;
    fn mul(self, o: &DyadicInterval) -> DyadicInterval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        DyadicInterval { lo, hi }
    }
}

/// Wire format: `{"lo": "m*2^e", "hi": "m*2^e"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
}

impl From<DyadicInterval> for IntervalJson {
    fn from(i: DyadicInterval) -> Self {
        IntervalJson {
            lo: i.lo.to_string(),
            hi: i.hi.to_string(),
        }
    }
}

impl TryFrom<IntervalJson> for DyadicInterval {
    type Error = Error;
    fn try_from(j: IntervalJson) -> Result<Self> {
        DyadicInterval::new(Dyadic::parse(&j.lo)?, Dyadic::parse(&j.hi)?)
    }
}

/// The operations exposed by [`interval_arith`].
#[derive(Clone, Debug)]
pub enum IntervalOp {
    Add,
    Sub,
    Mul,
    Neg,
    /// `x^(1/p)`; the second operand is ignored.
    Root(Exponent),
}

/// Applies `op` to `a` (and `b` for binary ops). Roots are rounded outward on
/// the `2^-k` grid; the ring operations are exact.
pub fn interval_arith(a: &DyadicInterval, b: &DyadicInterval, op: IntervalOp, k: u32) -> Result<DyadicInterval> {
    match op {
        IntervalOp::Add => Ok(a + b),
        IntervalOp::Sub => Ok(a - b),
        IntervalOp::Mul => Ok(a * b),
        IntervalOp::Neg => Ok(-a),
        IntervalOp::Root(p) => a.root(&p, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    fn iv(a: i64, b: i64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::from_int(a), Dyadic::from_int(b)).unwrap()
    }

    #[test]
    fn ring_ops_exact() {
        let r = interval_arith(&iv(1, 1), &iv(2, 2), IntervalOp::Add, 10).unwrap();
        assert_eq!(r, iv(3, 3));
        let r = interval_arith(&iv(0, 0), &iv(-5, 7), IntervalOp::Mul, 10).unwrap();
        assert_eq!(r, iv(0, 0));
        assert_eq!(&iv(-1, 2) * &iv(-3, 4), iv(-6, 8));
        assert_eq!(iv(-3, 2).sqr(), iv(0, 9));
    }

    #[test]
    fn root_of_four() {
        let two = Exponent::integer(2).unwrap();
        let r = interval_arith(&iv(4, 4), &iv(0, 0), IntervalOp::Root(two.clone()), 10).unwrap();
        assert_eq!(r, iv(2, 2));
        assert!(matches!(
            interval_arith(&iv(-1, 4), &iv(0, 0), IntervalOp::Root(two), 10),
            Err(Error::NegativeRoot)
        ));
    }

    #[test]
    fn settle_nests() {
        let third = ratio(1, 3);
        let mut prev: Option<DyadicInterval> = None;
        for k in 0..40 {
            let tight = DyadicInterval::from_rational(&third, k + 4);
            let s = tight.settle(k);
            assert!(s.contains_rational(&third));
            assert!(s.width() < Dyadic::pow2(-(k as i64)));
            if let Some(p) = prev {
                assert!(s.is_subset_of(&p), "k={k}");
            }
            prev = Some(s);
        }
    }

    #[test]
    fn recip_encloses() {
        let r = iv(3, 3).recip(20).unwrap();
        assert!(r.contains_rational(&ratio(1, 3)));
        assert!(r.width_le_pow2(20));
        assert!(iv(0, 1).recip(4).is_err());
        assert!(iv(2, 8).pow_rat(&ratio(1, 3), 12).unwrap().contains_rational(&int(2)));
    }
}
