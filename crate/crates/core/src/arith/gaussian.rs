use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// An element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// re^2 + im^2
    pub fn abs_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    /// Parses `"a/b+c/di"`, `"a/b-c/di"`, `"a/b"`, `"c/di"` or an integer.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&t)?));
        };
        // split point: last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, parse_im(&body[i..])?),
            None => (Rational::zero(), parse_im(body)?),
        };
        Ok(GaussianRational::new(re, im))
    }
}

fn parse_im(s: &str) -> Result<Rational> {
    match s {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_rational(s.strip_prefix('+').unwrap_or(s)),
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}i",
            format_rational(&self.re),
            sign,
            format_rational(&self.im.abs())
        )
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    #[test]
    fn parse_forms() {
        let z = GaussianRational::parse("1/1+0/1i").unwrap();
        assert_eq!(z, GaussianRational::one());
        let z = GaussianRational::parse("-1/2-3/4i").unwrap();
        assert_eq!(z, GaussianRational::new(ratio(-1, 2), ratio(-3, 4)));
        let z = GaussianRational::parse("-1").unwrap();
        assert_eq!(z, GaussianRational::real(int(-1)));
        let z = GaussianRational::parse("-i").unwrap();
        assert_eq!(z, GaussianRational::new(int(0), int(-1)));
        let z = GaussianRational::parse("3+4i").unwrap();
        assert_eq!(z.abs_sq(), int(25));
    }

    #[test]
    fn display_round_trips() {
        let z = GaussianRational::new(ratio(3, 7), ratio(-5, 2));
        assert_eq!(z.to_string(), "3/7-5/2i");
        assert_eq!(GaussianRational::parse(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn arithmetic() {
        let i = GaussianRational::new(int(0), int(1));
        assert_eq!(&i * &i, GaussianRational::real(int(-1)));
        assert!((&i - &i).is_zero());
    }
}
