//! Rigorous enclosures of rational powers, plus the precision-refinement driver
//! used by every compound enclosure in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dyadic::Dyadic;
use super::exponent::Exponent;
use super::gaussian::GaussianRational;
use super::interval::DyadicInterval;
use super::rational::{powi, Rational};
use crate::error::{Error, Result};

/// Enclosure of `x^e` on the `2^-k` grid: width `<= 2^-k`, a point when exact.
///
/// `e = u/v` is evaluated as `(x^u)^(1/v)` through an exact integer `v`-th root,
/// so the endpoints are the floor/ceiling of the true value on the grid. This
/// makes the result monotone in `x` and nested in `k`.
pub fn rat_pow(x: &Rational, e: &Rational, k: u32) -> Result<DyadicInterval> {
    if x.is_negative() {
        return Err(Error::NegativeBase);
    }
    if x.is_zero() {
        return if e.is_negative() {
            Err(Error::ZeroToNegativePower)
        } else if e.is_zero() {
            Ok(DyadicInterval::one())
        } else {
            Ok(DyadicInterval::zero())
        };
    }
    let u = e
        .numer()
        .to_i64()
        .ok_or_else(|| Error::InvalidExponent("exponent numerator too large".into()))?;
    let v = e
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidExponent("exponent denominator too large".into()))?;
    let y = powi(x, u);
    Ok(root_enclosure(&y, v, k))
}

/// Grid enclosure of the positive `v`-th root of `y > 0`.
fn root_enclosure(y: &Rational, v: u32, k: u32) -> DyadicInterval {
    if v == 1 {
        return DyadicInterval::from_rational(y, k);
    }
    // floor((y * 2^(k v))^(1/v)) = floor(nth_root(floor(n 2^(kv) / d)))
    let shift = k as u64 * v as u64;
    let num: BigInt = y.numer() << shift;
    let scaled = &num / y.denom();
    let m = scaled.nth_root(v);
    let exact = num_traits::pow(m.clone(), v as usize) * y.denom() == num;
    let lo = Dyadic::new(m.clone(), -(k as i64));
    if exact {
        DyadicInterval::point(lo)
    } else {
        DyadicInterval::new_unchecked(lo, Dyadic::new(m + BigInt::one(), -(k as i64)))
    }
}

/// Enclosure of `|c|^p = (re^2 + im^2)^(p/2)`, width `<= 2^-k`.
pub fn abs_pow(c: &GaussianRational, p: &Exponent, k: u32) -> DyadicInterval {
    let half_p = p.value() / Rational::from_integer(BigInt::from(2));
    rat_pow(&c.abs_sq(), &half_p, k).expect("abs_sq is nonnegative and p > 0")
}

/// Runs `f` at increasing working precision until the enclosure has width
/// `<= 2^-target`. Returns the last attempt if the budget runs out.
pub fn refine<F>(target: u32, mut f: F) -> Result<DyadicInterval>
where
    F: FnMut(u32) -> Result<DyadicInterval>,
{
    let mut prec = target + 8;
    let mut last = f(prec)?;
    for _ in 0..16 {
        if last.width_le_pow2(target) {
            return Ok(last);
        }
        prec += (prec / 2).max(16);
        last = f(prec)?;
    }
    Ok(last)
}

/// Like [`refine`] but returns an enclosure of width `< 2^-k` that is nested
/// inside the output for every smaller `k` (see [`DyadicInterval::settle`]).
pub fn nested<F>(k: u32, f: F) -> Result<DyadicInterval>
where
    F: FnMut(u32) -> Result<DyadicInterval>,
{
    Ok(refine(k + 4, f)?.settle(k))
}
