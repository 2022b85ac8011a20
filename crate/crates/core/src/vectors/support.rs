use std::collections::BTreeSet;

use num_traits::Zero;

use crate::arith::Rational;

/// The support of a vector up to null sets: atomic indices plus a finite
/// union of disjoint, sorted, non-touching intervals of `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Support {
    pub atoms: BTreeSet<u64>,
    pub intervals: Vec<(Rational, Rational)>,
}

impl Support {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn union(&self, o: &Support) -> Support {
        let mut all: Vec<(Rational, Rational)> = self.intervals.iter().chain(&o.intervals).cloned().collect();
        all.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (a, b) in all {
            match merged.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        Support {
            atoms: self.atoms.union(&o.atoms).copied().collect(),
            intervals: merged,
        }
    }

    /// Measure of the intersection, atoms weighing 1.
    pub fn overlap(&self, o: &Support) -> Rational {
        let atoms = self.atoms.intersection(&o.atoms).count() as i64;
        let mut total = Rational::from_integer(atoms.into());
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < o.intervals.len() {
            let (a, b) = &self.intervals[i];
            let (c, d) = &o.intervals[j];
            let lo = a.max(c);
            let hi = b.min(d);
            if lo < hi {
                total += hi - lo;
            }
            if b < d {
                i += 1;
            } else {
                j += 1;
            }
        }
        total
    }

    pub fn is_disjoint(&self, o: &Support) -> bool {
        self.overlap(o).is_zero()
    }
}
