//! Exact scalars and rigorous enclosures.

mod dyadic;
mod exponent;
mod gaussian;
mod interval;
mod pow;
pub mod rational;
mod surd;

pub use dyadic::Dyadic;
pub use exponent::Exponent;
pub use gaussian::GaussianRational;
pub use interval::{interval_arith, DyadicInterval, IntervalJson, IntervalOp};
pub use pow::{abs_pow, nested, rat_pow, refine};
pub use rational::Rational;
pub use surd::{Radical, Surd};
