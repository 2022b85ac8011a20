use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::rational::pow2;
use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::vectors::{Dim, HybridVector};

/// A generator of the standard presentation: an atomic basis vector `e_i` or
/// the indicator of the dyadic interval `[index 2^-level, (index + 1) 2^-level)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Generator {
    Atom(u64),
    Dyadic { level: u32, index: u64 },
}

impl Generator {
    pub fn interval(&self) -> Option<(Rational, Rational)> {
        match *self {
            Generator::Atom(_) => None,
            Generator::Dyadic { level, index } => {
                let w = pow2(-(level as i64));
                let a = &w * Rational::from_integer(index.into());
                Some((a.clone(), a + w))
            }
        }
    }

    pub fn vector(&self, dim: Dim) -> Result<HybridVector> {
        match self.interval() {
            None => {
                let Generator::Atom(i) = *self else { unreachable!() };
                HybridVector::atom(i, GaussianRational::one(), dim)
            }
            Some((a, b)) => HybridVector::indicator(&a, &b, GaussianRational::one(), dim),
        }
    }

    /// `e_0, ..., e_{n-1}` followed by the `2^level` dyadic cells of that level.
    pub fn standard(atoms: u64, level: u32) -> Vec<Generator> {
        (0..atoms)
            .map(Generator::Atom)
            .chain((0..1u64 << level).map(|index| Generator::Dyadic { level, index }))
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Atom(i) => write!(f, "e{i}"),
            Generator::Dyadic { level, index } => write!(f, "d{level}.{index}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid generator {s:?}"));
        if let Some(i) = s.strip_prefix('e') {
            return i.parse().map(Generator::Atom).map_err(|_| bad());
        }
        let (level, index) = s.strip_prefix('d').and_then(|r| r.split_once('.')).ok_or_else(bad)?;
        let level: u32 = level.parse().map_err(|_| bad())?;
        let index: u64 = index.parse().map_err(|_| bad())?;
        if level >= 64 || index >> level != 0 {
            return Err(bad());
        }
        Ok(Generator::Dyadic { level, index })
    }
}

impl From<Generator> for String {
    fn from(g: Generator) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for Generator {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
