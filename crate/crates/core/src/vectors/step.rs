use num_traits::{One, Zero};

use super::coeff::Coefficient;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// A right-open piecewise constant function on `[0, 1]` with rational
/// breakpoints, kept in canonical form (no two adjacent pieces share a value).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFunction<C> {
    breaks: Vec<Rational>,
    values: Vec<C>,
}

impl<C: Coefficient> StepFunction<C> {
    pub fn zero() -> Self {
        Self::constant(C::zero())
    }

    pub fn constant(c: C) -> Self {
        StepFunction {
            breaks: vec![Rational::zero(), Rational::one()],
            values: vec![c],
        }
    }

    /// `c` on `[a, b)`, zero elsewhere; `0 <= a <= b <= 1`.
    pub fn indicator(a: &Rational, b: &Rational, c: C) -> Result<Self> {
        Self::from_pieces(vec![(a.clone(), b.clone(), c)])
    }

    /// Builds from sorted, non-overlapping pieces inside `[0, 1]`; gaps are zero.
    pub fn from_pieces(pieces: Vec<(Rational, Rational, C)>) -> Result<Self> {
        let mut breaks = vec![Rational::zero()];
        let mut values = Vec::new();
        for (a, b, c) in pieces {
            let last = breaks.last().unwrap().clone();
            if a < last || b < a || b > Rational::one() {
                return Err(Error::InvalidStepFunction(format!(
                    "piece [{a}, {b}) is out of order or outside [0, 1]"
                )));
            }
            if a > last {
                values.push(C::zero());
                breaks.push(a.clone());
            }
            if b > a {
                values.push(c);
                breaks.push(b);
            }
        }
        if *breaks.last().unwrap() < Rational::one() {
            values.push(C::zero());
            breaks.push(Rational::one());
        }
        Ok(StepFunction { breaks, values }.canonical())
    }

    fn canonical(self) -> Self {
        let mut breaks = vec![Rational::zero()];
        let mut values: Vec<C> = Vec::new();
        for (i, v) in self.values.into_iter().enumerate() {
            let b = &self.breaks[i + 1];
            if *b == self.breaks[i] {
                continue;
            }
            if values.last() == Some(&v) {
                *breaks.last_mut().unwrap() = b.clone();
            } else {
                values.push(v);
                breaks.push(b.clone());
            }
        }
        if values.is_empty() {
            return Self::zero();
        }
        StepFunction { breaks, values }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breaks
    }

    /// `(from, to, value)` for each piece, left to right.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational, &C)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (&self.breaks[i], &self.breaks[i + 1], v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn value_at(&self, x: &Rational) -> &C {
        let i = self.breaks[1..].partition_point(|b| b <= x).min(self.values.len() - 1);
        &self.values[i]
    }

    /// Pointwise combination on the common refinement.
    pub fn zip_with<D: Coefficient, F>(&self, o: &Self, mut f: F) -> StepFunction<D>
    where
        F: FnMut(&C, &C) -> D,
    {
        let mut cuts: Vec<Rational> = self.breaks.iter().chain(o.breaks.iter()).cloned().collect();
        cuts.sort();
        cuts.dedup();
        let mut values = Vec::with_capacity(cuts.len() - 1);
        let (mut i, mut j) = (0, 0);
        for w in cuts.windows(2) {
            while self.breaks[i + 1] <= w[0] {
                i += 1;
            }
            while o.breaks[j + 1] <= w[0] {
                j += 1;
            }
            values.push(f(&self.values[i], &o.values[j]));
        }
        StepFunction { breaks: cuts, values }.canonical()
    }

    pub fn map<D: Coefficient, F>(&self, mut f: F) -> StepFunction<D>
    where
        F: FnMut(&C) -> D,
    {
        StepFunction {
            breaks: self.breaks.clone(),
            values: self.values.iter().map(&mut f).collect(),
        }
        .canonical()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.add(b))
    }

    /// Measure of the set where both functions are nonzero.
    pub fn overlap_measure(&self, o: &Self) -> Rational {
        let both = self.zip_with(o, |a, b| {
            if a.is_zero() || b.is_zero() {
                C::zero()
            } else {
                a.clone()
            }
        });
        both.support_measure()
    }

    pub fn support_measure(&self) -> Rational {
        self.pieces()
            .filter(|(_, _, v)| !v.is_zero())
            .fold(Rational::zero(), |acc, (a, b, _)| acc + (b - a))
    }

    /// Measure of `{f != 0} Δ {g != 0}`.
    pub fn support_symm_diff(&self, o: &Self) -> Rational {
        let x = self.zip_with(o, |a, b| {
            if a.is_zero() != b.is_zero() {
                if a.is_zero() { b.clone() } else { a.clone() }
            } else {
                C::zero()
            }
        });
        x.support_measure()
    }

    /// Agrees with `self` on `[a, b)` and vanishes elsewhere.
    pub fn restrict(&self, a: &Rational, b: &Rational) -> Self {
        let mut pieces = Vec::new();
        for (s, t, v) in self.pieces() {
            let lo = s.max(a);
            let hi = t.min(b);
            if lo < hi {
                pieces.push((lo.clone(), hi.clone(), v.clone()));
            }
        }
        Self::from_pieces(pieces).expect("restricted pieces stay ordered")
    }

    /// The maximal intervals on which the function is nonzero.
    pub fn support_intervals(&self) -> Vec<(Rational, Rational)> {
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (a, b, v) in self.pieces() {
            if v.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.1 == *a => last.1 = b.clone(),
                _ => out.push((a.clone(), b.clone())),
            }
        }
        out
    }
}
