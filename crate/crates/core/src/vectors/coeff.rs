use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;

use crate::arith::rational::{checked_pow, Rational};
use crate::arith::{abs_pow, DyadicInterval, Exponent, GaussianRational, Surd};
use crate::error::Result;

/// Scalars a vector can carry: exact Gaussian rationals, or radical sums.
pub trait Coefficient: Clone + Debug + Display + PartialEq + Eq + Hash {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, g: &GaussianRational) -> Self;
    /// Enclosure of `|c|^p` whose width shrinks like `2^-prec`.
    fn abs_pow(&self, p: &Exponent, prec: u32) -> DyadicInterval;
    fn abs_pow_exact(&self, p: &Exponent) -> Option<Rational>;
    fn parse(s: &str) -> Result<Self>;
    fn to_surd(&self) -> Surd;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coefficient for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, g: &GaussianRational) -> Self {
        self * g
    }
    fn abs_pow(&self, p: &Exponent, prec: u32) -> DyadicInterval {
        abs_pow(self, p, prec)
    }
    fn abs_pow_exact(&self, p: &Exponent) -> Option<Rational> {
        checked_pow(&self.abs_sq(), &(p.value() / Rational::from_integer(BigInt::from(2))))
    }
    fn parse(s: &str) -> Result<Self> {
        GaussianRational::parse(s)
    }
    fn to_surd(&self) -> Surd {
        Surd::from_gauss(self.clone())
    }
}

impl Coefficient for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Surd::add(self, o)
    }
    fn neg(&self) -> Self {
        Surd::neg(self)
    }
    fn scale(&self, g: &GaussianRational) -> Self {
        Surd::scale(self, g)
    }
    fn abs_pow(&self, p: &Exponent, prec: u32) -> DyadicInterval {
        Surd::abs_pow(self, p, prec)
    }
    fn abs_pow_exact(&self, p: &Exponent) -> Option<Rational> {
        Surd::abs_pow_exact(self, p)
    }
    fn parse(s: &str) -> Result<Self> {
        Surd::parse(s)
    }
    fn to_surd(&self) -> Surd {
        self.clone()
    }
}
