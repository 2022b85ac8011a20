use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::Coefficient;
use super::step::StepFunction;
use super::support::Support;
use crate::arith::rational::{checked_pow, format_rational, parse_rational};
use crate::arith::{nested, rat_pow, DyadicInterval, Exponent, GaussianRational, Rational, Surd};
use crate::error::{Error, Result};

/// Number of atoms of the ambient space: `n` for `l^p_n (+) L^p`, `Omega` for `l^p (+) L^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Finite(u64),
    Omega,
}

impl Dim {
    pub fn admits(&self, index: u64) -> bool {
        match self {
            Dim::Finite(n) => index < *n,
            Dim::Omega => true,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Omega => f.write_str("omega"),
        }
    }
}

/// A vector of `l^p_n (+) L^p[0,1]`: finitely many atomic coefficients plus a
/// step function. Atoms are unit-weight points of the measure space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<C> {
    atoms: BTreeMap<u64, C>,
    steps: StepFunction<C>,
    dim: Dim,
}

/// Exact vectors with Gaussian-rational coefficients.
pub type HybridVector = Vector<GaussianRational>;
/// Vectors whose coefficients may involve real radicals such as `(1 - gamma)^(1/p)`.
pub type ApproxVector = Vector<Surd>;

impl<C: Coefficient> Vector<C> {
    pub fn zero(dim: Dim) -> Self {
        Vector {
            atoms: BTreeMap::new(),
            steps: StepFunction::zero(),
            dim,
        }
    }

    pub fn new(atoms: BTreeMap<u64, C>, steps: StepFunction<C>, dim: Dim) -> Result<Self> {
        if let Some(&i) = atoms.keys().find(|&&i| !dim.admits(i)) {
            return Err(Error::IndexOutOfBounds {
                index: i,
                bound: match dim {
                    Dim::Finite(n) => n,
                    Dim::Omega => u64::MAX,
                },
            });
        }
        let atoms = atoms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Vector { atoms, steps, dim })
    }

    /// `c * e_i`.
    pub fn atom(i: u64, c: C, dim: Dim) -> Result<Self> {
        Self::new([(i, c)].into(), StepFunction::zero(), dim)
    }

    pub fn continuous(steps: StepFunction<C>, dim: Dim) -> Self {
        Vector {
            atoms: BTreeMap::new(),
            steps,
            dim,
        }
    }

    /// `c * chi_[a, b]`.
    pub fn indicator(a: &Rational, b: &Rational, c: C, dim: Dim) -> Result<Self> {
        Ok(Self::continuous(StepFunction::indicator(a, b, c)?, dim))
    }

    pub fn atoms(&self) -> &BTreeMap<u64, C> {
        &self.atoms
    }

    pub fn steps(&self) -> &StepFunction<C> {
        &self.steps
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.steps.is_zero()
    }

    fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch(self.dim.to_string(), o.dim.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        let mut atoms = self.atoms.clone();
        for (i, c) in &o.atoms {
            let s = atoms.get(i).map_or_else(|| c.clone(), |a| a.add(c));
            if s.is_zero() {
                atoms.remove(i);
            } else {
                atoms.insert(*i, s);
            }
        }
        Ok(Vector {
            atoms,
            steps: self.steps.add(&o.steps),
            dim: self.dim,
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, g: &GaussianRational) -> Self {
        self.map(|c| c.scale(g))
    }

    pub fn map<D: Coefficient, F: FnMut(&C) -> D>(&self, mut f: F) -> Vector<D> {
        Vector {
            atoms: self
                .atoms
                .iter()
                .map(|(i, c)| (*i, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            steps: self.steps.map(f),
            dim: self.dim,
        }
    }

    pub fn to_approx(&self) -> ApproxVector {
        self.map(|c| c.to_surd())
    }

    /// Same coefficients, different ambient dimension.
    pub fn with_dim(&self, dim: Dim) -> Result<Self> {
        Self::new(self.atoms.clone(), self.steps.clone(), dim)
    }

    pub fn atomic_part(&self) -> Self {
        Vector {
            atoms: self.atoms.clone(),
            steps: StepFunction::zero(),
            dim: self.dim,
        }
    }

    pub fn continuous_part(&self) -> Self {
        Self::continuous(self.steps.clone(), self.dim)
    }

    /// `|c|^p` weights of every term: `(coefficient, measure)` pairs.
    fn terms(&self) -> impl Iterator<Item = (&C, Rational)> {
        let atoms = self.atoms.values().map(|c| (c, Rational::one()));
        let steps = self
            .steps
            .pieces()
            .filter(|(_, _, v)| !v.is_zero())
            .map(|(a, b, v)| (v, b - a));
        atoms.chain(steps)
    }

    /// `||v||_p^p` as an exact rational, when every term is one.
    pub fn mass_exact(&self, p: &Exponent) -> Option<Rational> {
        let mut total = Rational::zero();
        for (c, w) in self.terms() {
            total += c.abs_pow_exact(p)? * w;
        }
        Some(total)
    }

    /// Enclosure of `||v||_p^p` at working precision `prec`.
    pub fn mass_enclosure(&self, p: &Exponent, prec: u32) -> DyadicInterval {
        let extra = 64 - (self.atoms.len() as u64 + self.steps.breakpoints().len() as u64).leading_zeros();
        let wp = prec + extra + 2;
        let mut acc = DyadicInterval::zero();
        for (c, w) in self.terms() {
            let term = &c.abs_pow(p, wp) * &DyadicInterval::from_rational(&w, wp + 2);
            acc = &acc + &term.round_out(wp + 2);
        }
        acc.round_out(prec + 2)
    }

    /// `||v||_p^p`, width `< 2^-k`, nested in `k`.
    pub fn norm_p(&self, p: &Exponent, k: u32) -> DyadicInterval {
        match self.mass_exact(p) {
            Some(m) => DyadicInterval::from_rational(&m, k),
            None => nested(k, |prec| Ok(self.mass_enclosure(p, prec))).expect("mass enclosures are infallible"),
        }
    }

    /// `||v||_p`, width `< 2^-k`, nested in `k`.
    pub fn norm(&self, p: &Exponent, k: u32) -> DyadicInterval {
        if let Some(m) = self.mass_exact(p) {
            return match checked_pow(&m, &p.recip()) {
                Some(r) => DyadicInterval::from_rational(&r, k),
                None => rat_pow(&m, &p.recip(), k).expect("masses are nonnegative"),
            };
        }
        nested(k, |prec| self.mass_enclosure(p, prec).clamp_nonneg().root(p, prec))
            .expect("mass enclosures are clamped to be nonnegative")
    }

    /// True iff the supports meet in a null set.
    pub fn support_disjoint(&self, o: &Self) -> bool {
        self.atoms.keys().all(|i| !o.atoms.contains_key(i)) && self.steps.overlap_measure(&o.steps).is_zero()
    }

    /// `self ⪯ o`: `o - self` and `self` are disjointly supported.
    pub fn is_subvector(&self, o: &Self) -> Result<bool> {
        Ok(o.sub(self)?.support_disjoint(self))
    }

    /// Measure of `supp(self) Δ supp(o)`, atoms weighing 1.
    pub fn symm_diff_measure(&self, o: &Self) -> Rational {
        let atoms = self.atoms.keys().filter(|i| !o.atoms.contains_key(i)).count()
            + o.atoms.keys().filter(|i| !self.atoms.contains_key(i)).count();
        Rational::from_integer((atoms as i64).into()) + self.steps.support_symm_diff(&o.steps)
    }

    pub fn support(&self) -> Support {
        Support {
            atoms: self.atoms.keys().copied().collect(),
            intervals: self.steps.support_intervals(),
        }
    }

    /// Measure of the support, atoms weighing 1.
    pub fn support_measure(&self) -> Rational {
        Rational::from_integer((self.atoms.len() as i64).into()) + self.steps.support_measure()
    }

    pub fn to_json(&self) -> VectorJson {
        VectorJson {
            atoms: self.atoms.iter().map(|(i, c)| (i.to_string(), c.to_string())).collect(),
            steps: self
                .steps
                .pieces()
                .filter(|(_, _, v)| !v.is_zero())
                .map(|(a, b, v)| StepJson {
                    from: format_rational(a),
                    to: format_rational(b),
                    value: v.to_string(),
                })
                .collect(),
            dim: self.dim.into(),
        }
    }

    pub fn from_json(j: &VectorJson) -> Result<Self> {
        let mut atoms = BTreeMap::new();
        for (i, c) in &j.atoms {
            let i: u64 = i
                .parse()
                .map_err(|_| Error::Parse(format!("invalid atomic index {i:?}")))?;
            atoms.insert(i, C::parse(c)?);
        }
        let pieces = j
            .steps
            .iter()
            .map(|s| Ok((parse_rational(&s.from)?, parse_rational(&s.to)?, C::parse(&s.value)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(atoms, StepFunction::from_pieces(pieces)?, j.dim.into())
    }
}

impl<C: Coefficient> fmt::Display for Vector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = serde_json::to_string(&self.to_json()).map_err(|_| fmt::Error)?;
        f.write_str(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepJson {
    pub from: String,
    pub to: String,
    pub value: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaTag {
    Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimJson {
    Finite(u64),
    Omega(OmegaTag),
}

impl From<Dim> for DimJson {
    fn from(d: Dim) -> Self {
        match d {
            Dim::Finite(n) => DimJson::Finite(n),
            Dim::Omega => DimJson::Omega(OmegaTag::Omega),
        }
    }
}

impl From<DimJson> for Dim {
    fn from(d: DimJson) -> Self {
        match d {
            DimJson::Finite(n) => Dim::Finite(n),
            DimJson::Omega(_) => Dim::Omega,
        }
    }
}

/// Wire format: `{"atoms": {"0": "1/1+0/1i"}, "steps": [{"from", "to", "value"}], "dim": 3 | "omega"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    #[serde(default)]
    pub atoms: BTreeMap<String, String>,
    #[serde(default)]
    pub steps: Vec<StepJson>,
    pub dim: DimJson,
}
