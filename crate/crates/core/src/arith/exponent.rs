use std::fmt;

use num_traits::{One, ToPrimitive};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// A rational exponent `p >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(Rational);

impl Exponent {
    pub fn new(p: Rational) -> Result<Self> {
        if p < Rational::one() {
            return Err(Error::InvalidExponent(format!("p = {} < 1", format_rational(&p))));
        }
        // keep numerators/denominators in machine range; powers use them as i64/u32
        if p.numer().to_i64().is_none() || p.denom().to_u32().is_none() {
            return Err(Error::InvalidExponent("p too large".into()));
        }
        Ok(Exponent(p))
    }

    pub fn integer(p: i64) -> Result<Self> {
        Self::new(int(p))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn recip(&self) -> Rational {
        self.0.recip()
    }

    /// p = 2 is the Hilbert case, which the constructions here do not cover.
    pub fn is_hilbert(&self) -> bool {
        self.0 == int(2)
    }

    /// `ceil(p)` as a small integer.
    pub fn ceil(&self) -> u32 {
        self.0.ceil().to_integer().try_into().unwrap_or(u32::MAX)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}", format_rational(&self.0))
        }
    }
}
