//! Exact radical sums: finite Q(i)-combinations of real radicals `r^(1/v)`.
//!
//! These carry the irrational coefficients that appear in materialized
//! disintegrations, such as `(1 - gamma)^(1/p)`, and can be enclosed at any
//! precision. Identical radicals cancel exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exponent::Exponent;
use super::gaussian::GaussianRational;
use super::interval::DyadicInterval;
use super::pow::rat_pow;
use super::rational::{checked_pow, checked_root, format_rational, int, parse_rational, powi, Rational};
use crate::error::{Error, Result};

/// `base^(1/index)` with `base > 0`; `base = 1, index = 1` is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radical {
    base: Rational,
    index: u32,
}

impl Radical {
    pub fn unit() -> Self {
        Radical {
            base: Rational::one(),
            index: 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.index == 1
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Canonical `(factor, radical)` with `factor * radical = r^(1/v)`.
    fn make(mut r: Rational, mut v: u32) -> (Rational, Radical) {
        debug_assert!(r.is_positive() && v >= 1);
        'reduce: loop {
            if v == 1 || r.is_one() {
                return (r, Radical::unit());
            }
            for d in (2..=v).rev().filter(|&d| v.is_multiple_of(d)) {
                if let Some(root) = checked_root(&r, d) {
                    r = root;
                    v /= d;
                    continue 'reduce;
                }
            }
            return (Rational::one(), Radical { base: r, index: v });
        }
    }

    /// `r^e` for `r > 0` and rational `e`, split into a rational factor and a radical.
    pub fn power(r: &Rational, e: &Rational) -> Result<(Rational, Radical)> {
        if !r.is_positive() {
            return Err(Error::NegativeBase);
        }
        let u = e
            .numer()
            .to_i64()
            .ok_or_else(|| Error::InvalidExponent("exponent too large".into()))?;
        let v = e
            .denom()
            .to_i64()
            .ok_or_else(|| Error::InvalidExponent("exponent too large".into()))?;
        let (q, s) = u.div_mod_floor(&v);
        let factor = powi(r, q);
        let (f2, rad) = Radical::make(powi(r, s), v as u32);
        Ok((factor * f2, rad))
    }

    pub fn mul(&self, o: &Radical) -> (Rational, Radical) {
        if self.is_unit() {
            return (Rational::one(), o.clone());
        }
        if o.is_unit() {
            return (Rational::one(), self.clone());
        }
        let l = self.index.lcm(&o.index);
        let base = powi(&self.base, (l / self.index) as i64) * powi(&o.base, (l / o.index) as i64);
        Radical::make(base, l)
    }

    pub fn enclose(&self, prec: u32) -> DyadicInterval {
        if self.is_unit() {
            return DyadicInterval::one();
        }
        rat_pow(&self.base, &Rational::new(1.into(), self.index.into()), prec).expect("radical base is positive")
    }
}

/// A finite sum `sum_i g_i * rho_i`, `g_i` in Q(i), `rho_i` distinct radicals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surd {
    terms: BTreeMap<Radical, GaussianRational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Surd::from_gauss(GaussianRational::one())
    }

    pub fn from_gauss(g: GaussianRational) -> Self {
        let mut s = Surd::zero();
        s.push(Radical::unit(), g);
        s
    }

    pub fn from_rational(r: Rational) -> Self {
        Surd::from_gauss(GaussianRational::real(r))
    }

    /// `coeff * r^e` for `r >= 0`.
    pub fn radical(coeff: GaussianRational, r: &Rational, e: &Rational) -> Result<Self> {
        if r.is_zero() {
            return if e.is_positive() {
                Ok(Surd::zero())
            } else {
                Err(Error::ZeroToNegativePower)
            };
        }
        let (f, rad) = Radical::power(r, e)?;
        let mut s = Surd::zero();
        s.push(rad, coeff.scale(&f));
        Ok(s)
    }

    fn push(&mut self, rad: Radical, g: GaussianRational) {
        if g.is_zero() {
            return;
        }
        let entry = self.terms.entry(rad.clone()).or_insert_with(GaussianRational::zero);
        *entry = &*entry + &g;
        if entry.is_zero() {
            self.terms.remove(&rad);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Radical, &GaussianRational)> {
        self.terms.iter()
    }

    /// Symbolically zero. Radical sums are not fully canonical, so a nonzero
    /// symbolic form can in rare cases still denote 0; such coefficients are
    /// treated as nonzero, which only over-approximates supports.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as an element of Q(i), when no radical survives.
    pub fn as_gauss(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (rad, g) = self.terms.iter().next().unwrap();
                rad.is_unit().then(|| g.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, o: &Surd) -> Surd {
        let mut s = self.clone();
        for (rad, g) in &o.terms {
            s.push(rad.clone(), g.clone());
        }
        s
    }

    pub fn neg(&self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(r, g)| (r.clone(), -g)).collect(),
        }
    }

    pub fn sub(&self, o: &Surd) -> Surd {
        self.add(&o.neg())
    }

    pub fn scale(&self, g: &GaussianRational) -> Surd {
        if g.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * g)).collect(),
        }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let mut s = Surd::zero();
        for (ra, ga) in &self.terms {
            for (rb, gb) in &o.terms {
                let (f, rad) = ra.mul(rb);
                s.push(rad, (ga * gb).scale(&f));
            }
        }
        s
    }

    /// Enclosures of the real and imaginary parts. Widths shrink like `2^-prec`
    /// times the size of the rational coefficients.
    pub fn enclose(&self, prec: u32) -> (DyadicInterval, DyadicInterval) {
        let mut re = DyadicInterval::zero();
        let mut im = DyadicInterval::zero();
        for (rad, g) in &self.terms {
            let r = rad.enclose(prec);
            if !g.re.is_zero() {
                re = &re + &(&DyadicInterval::from_rational(&g.re, prec) * &r);
            }
            if !g.im.is_zero() {
                im = &im + &(&DyadicInterval::from_rational(&g.im, prec) * &r);
            }
        }
        (re.round_out(prec + 2), im.round_out(prec + 2))
    }

    /// Enclosure of `|s|^p` at working precision `prec` (width not guaranteed).
    pub fn abs_pow(&self, p: &Exponent, prec: u32) -> DyadicInterval {
        if let Some(exact) = self.abs_pow_exact(p) {
            return DyadicInterval::from_rational(&exact, prec);
        }
        let (re, im) = self.enclose(prec);
        let sq = (&re.sqr() + &im.sqr()).round_out(prec);
        sq.pow_rat(&(p.value() / int(2)), prec).expect("squares are nonnegative")
    }

    /// `|s|^p` as an exact rational, when it is one and `s` has a single term.
    pub fn abs_pow_exact(&self, p: &Exponent) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (rad, g) = self.terms.iter().next().unwrap();
                let s = g.abs_sq();
                if rad.is_unit() {
                    return checked_pow(&s, &(p.value() / int(2)));
                }
                let t = powi(&s, rad.index as i64) * &rad.base * &rad.base;
                checked_pow(&t, &(p.value() / int(2 * rad.index as i64)))
            }
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Surd> {
        let mut out = Surd::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            match term.split_once("*[") {
                None => out = out.add(&Surd::from_gauss(GaussianRational::parse(term)?)),
                Some((g, rest)) => {
                    let bad = || Error::Parse(format!("invalid radical term {term:?}"));
                    let (base, idx) = rest.split_once("]^(1/").ok_or_else(bad)?;
                    let idx = idx.strip_suffix(')').ok_or_else(bad)?;
                    let base = parse_rational(base)?;
                    let idx: i64 = idx.parse().map_err(|_| bad())?;
                    if idx < 1 {
                        return Err(bad());
                    }
                    let t = Surd::radical(GaussianRational::parse(g)?, &base, &Rational::new(1.into(), idx.into()))?;
                    out = out.add(&t);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}", GaussianRational::zero());
        }
        let mut first = true;
        for (rad, g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if rad.is_unit() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}*[{}]^(1/{})", format_rational(&rad.base), rad.index)?;
            }
        }
        Ok(())
    }
}

impl From<GaussianRational> for Surd {
    fn from(g: GaussianRational) -> Self {
        Surd::from_gauss(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    #[test]
    fn perfect_powers_collapse() {
        let s = Surd::radical(GaussianRational::one(), &ratio(1, 4), &ratio(1, 2)).unwrap();
        assert_eq!(s.as_gauss(), Some(GaussianRational::real(ratio(1, 2))));
        let s = Surd::radical(GaussianRational::one(), &int(8), &ratio(1, 6)).unwrap();
        let t = Surd::radical(GaussianRational::one(), &int(2), &ratio(1, 2)).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn identical_radicals_cancel() {
        let a = Surd::radical(GaussianRational::one(), &ratio(2, 3), &ratio(1, 3)).unwrap();
        assert!(a.sub(&a).is_zero());
        let two_a = a.add(&a);
        assert_eq!(two_a, a.scale(&GaussianRational::real(int(2))));
    }

    #[test]
    fn products_and_pth_powers() {
        let p = Exponent::integer(3).unwrap();
        let c = ratio(2, 3);
        let a = Surd::radical(GaussianRational::one(), &c, &ratio(-1, 3)).unwrap();
        assert_eq!(a.abs_pow_exact(&p), Some(ratio(3, 2)));
        let b = Surd::radical(GaussianRational::one(), &c, &ratio(1, 3)).unwrap();
        assert_eq!(a.mul(&b), Surd::one());
        let p = Exponent::new(ratio(3, 2)).unwrap();
        let a = Surd::radical(GaussianRational::one(), &c, &ratio(2, 3)).unwrap();
        assert_eq!(a.abs_pow_exact(&p), Some(c));
    }

    #[test]
    fn enclosure_contains_value() {
        let a = Surd::radical(GaussianRational::parse("1+1i").unwrap(), &int(2), &ratio(1, 2)).unwrap();
        let (re, im) = a.enclose(40);
        let s2 = std::f64::consts::SQRT_2;
        assert!(re.lo().to_f64() <= s2 && re.hi().to_f64() >= s2);
        assert!(re.lo().to_f64() > 1.414 && re.hi().to_f64() < 1.415);
        assert!(re.width_le_pow2(36) && im.width_le_pow2(36));
    }

    #[test]
    fn display_round_trip() {
        let a = Surd::radical(GaussianRational::parse("1/2-3i").unwrap(), &ratio(5, 7), &ratio(1, 3))
            .unwrap()
            .add(&Surd::from_rational(ratio(-1, 9)));
        let s = a.to_string();
        assert_eq!(Surd::parse(&s).unwrap(), a, "{s}");
        assert_eq!(Surd::parse(&Surd::zero().to_string()).unwrap(), Surd::zero());
    }
}
