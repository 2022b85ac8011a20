use num_traits::{One, Zero};

use super::schedule::{LeftCEReal, QSequence};
use crate::arith::rational::{int, pow2};
use crate::arith::{DyadicInterval, Exponent, GaussianRational, Rational, Surd};
use crate::error::{Error, Result};
use crate::tree::{dyadic_interval, Membership, NodePath, PresentationOracle};
use crate::vectors::{ApproxVector, Dim, StepFunction, Vector};

/// Position of a node in the finite-atomic tree.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape<'a> {
    Root,
    /// `(0)^k`, `k >= 1`.
    Spine(u64),
    /// `(0)^k (1) tail`.
    Branch(u64, &'a [u64]),
    /// `(1) tail`.
    Right(&'a [u64]),
    /// `(j)`, `2 <= j <= n`: the terminal `e_{j-1}`.
    Atom(u64),
}

/// The presentation of `l^p_n (+) L^p[0,1]` whose atom `(1 - gamma)^(1/p) e_0`
/// is only approached along the spine `(0), (0,0), ...` at a rate dictated by
/// the left-c.e. approximations `q_j` of `gamma`.
///
/// Node masses are exact rationals in the `q_j`; `gamma` is used only by the
/// ground-truth layer (labels and chain limits) when attached.
#[derive(Clone, Debug)]
pub struct FiniteAtomicOracle {
    n: u64,
    p: Exponent,
    q: QSequence,
    truth: Option<Rational>,
}

impl FiniteAtomicOracle {
    pub fn new(n: u64, p: Exponent, q: QSequence) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("the finite-atomic construction needs n >= 1".into()));
        }
        Ok(FiniteAtomicOracle { n, p, q, truth: None })
    }

    /// Builds the oracle from `lce` and attaches `gamma` as ground truth.
    pub fn with_truth(n: u64, p: Exponent, lce: &LeftCEReal) -> Result<Self> {
        Ok(Self::new(n, p, lce.sequence().clone())?.attach_truth(lce.gamma().clone()))
    }

    pub fn attach_truth(mut self, gamma: Rational) -> Self {
        self.truth = Some(gamma);
        self
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self, j: u64) -> Rational {
        self.q.q(j)
    }

    pub fn gamma(&self) -> Option<&Rational> {
        self.truth.as_ref()
    }

    fn shape<'a>(&self, node: &'a NodePath) -> Option<Shape<'a>> {
        let path = &node.0[..];
        let binary = |t: &[u64]| t.iter().all(|&b| b < 2);
        match path.first() {
            None => Some(Shape::Root),
            Some(0) => {
                let k = path.iter().take_while(|&&b| b == 0).count();
                if k == path.len() {
                    return Some(Shape::Spine(k as u64));
                }
                let tail = &path[k + 1..];
                (path[k] == 1 && binary(tail)).then_some(Shape::Branch(k as u64, tail))
            }
            Some(1) => binary(&path[1..]).then(|| Shape::Right(&path[1..])),
            Some(&j) => (path.len() == 1 && j <= self.n).then_some(Shape::Atom(j)),
        }
    }

    /// Exact `||phi(node)||_p^p`.
    pub fn mass(&self, node: &NodePath) -> Option<Rational> {
        Some(match self.shape(node)? {
            Shape::Root => int(self.n as i64 + 1) - self.q(0),
            Shape::Spine(k) => Rational::one() - self.q(k - 1),
            Shape::Branch(k, tail) => pow2(-(tail.len() as i64)) * (self.q(k) - self.q(k - 1)),
            Shape::Right(tail) => pow2(-(tail.len() as i64)),
            Shape::Atom(_) => Rational::one(),
        })
    }

    fn dim(&self) -> Dim {
        Dim::Finite(self.n)
    }

    /// `(1 - gamma)^(1/p) e_0`: the atom approached along the spine.
    pub fn spine_atom(&self) -> Option<ApproxVector> {
        let gamma = self.truth.as_ref()?;
        let a = Surd::radical(GaussianRational::one(), &(Rational::one() - gamma), &self.p.recip()).ok()?;
        Vector::atom(0, a, self.dim()).ok()
    }

    /// The `n` atoms `(1 - gamma)^(1/p) e_0, e_1, ..., e_{n-1}` of the ground truth.
    pub fn true_atoms(&self) -> Option<Vec<ApproxVector>> {
        let mut out = vec![self.spine_atom()?];
        for i in 1..self.n {
            out.push(Vector::atom(i, Surd::one(), self.dim()).ok()?);
        }
        Some(out)
    }

    fn ground_label(&self, node: &NodePath) -> Option<ApproxVector> {
        let gamma = self.truth.as_ref()?;
        let dim = self.dim();
        let c = Rational::one() - gamma + self.q(0);
        let big_c = Surd::radical(GaussianRational::one(), &c, &-self.p.recip()).ok()?;
        let sub = |lo: &Rational, hi: &Rational, tail: &[u64]| {
            let (a, b) = dyadic_interval(tail);
            let w = hi - lo;
            (lo + &w * a, lo + &w * b)
        };
        match self.shape(node)? {
            Shape::Root => {
                let split = gamma - self.q(0);
                let steps = StepFunction::from_pieces(vec![
                    (Rational::zero(), split.clone(), Surd::one()),
                    (split, Rational::one(), big_c),
                ])
                .ok()?;
                let mut v = self.spine_atom()?.add(&Vector::continuous(steps, dim)).ok()?;
                for i in 1..self.n {
                    v = v.add(&Vector::atom(i, Surd::one(), dim).ok()?).ok()?;
                }
                Some(v)
            }
            Shape::Spine(k) => {
                let cont = Vector::indicator(&Rational::zero(), &(gamma - self.q(k - 1)), Surd::one(), dim).ok()?;
                self.spine_atom()?.add(&cont).ok()
            }
            Shape::Branch(k, tail) => {
                let (a, b) = sub(&(gamma - self.q(k)), &(gamma - self.q(k - 1)), tail);
                Vector::indicator(&a, &b, Surd::one(), dim).ok()
            }
            Shape::Right(tail) => {
                let (a, b) = sub(&(gamma - self.q(0)), &Rational::one(), tail);
                Vector::indicator(&a, &b, big_c, dim).ok()
            }
            Shape::Atom(j) => Vector::atom(j - 1, Surd::one(), dim).ok(),
        }
    }
}

impl PresentationOracle for FiniteAtomicOracle {
    fn exponent(&self) -> &Exponent {
        &self.p
    }

    fn dim(&self) -> Dim {
        FiniteAtomicOracle::dim(self)
    }

    fn member(&self, node: &NodePath, _stage: u64) -> Membership {
        if self.shape(node).is_some() {
            Membership::In
        } else {
            Membership::Out
        }
    }

    fn children(&self, node: &NodePath, _stage: u64) -> Vec<NodePath> {
        match self.shape(node) {
            Some(Shape::Root) => (0..=self.n).map(|j| node.child(j)).collect(),
            Some(Shape::Atom(_)) | None => Vec::new(),
            Some(_) => vec![node.child(0), node.child(1)],
        }
    }

    fn node_norm_p(&self, node: &NodePath, k: u32) -> Result<DyadicInterval> {
        let m = self.mass(node).ok_or_else(|| Error::NotInTree(node.clone()))?;
        Ok(DyadicInterval::from_rational(&m, k))
    }

    fn is_terminal(&self, node: &NodePath) -> Option<bool> {
        self.shape(node).map(|s| matches!(s, Shape::Atom(_)))
    }

    fn label(&self, node: &NodePath) -> Option<ApproxVector> {
        self.ground_label(node)
    }

    fn limit_hint(&self, node: &NodePath) -> Option<ApproxVector> {
        self.truth.as_ref()?;
        match self.shape(node)? {
            Shape::Spine(_) => self.spine_atom(),
            Shape::Atom(_) => self.ground_label(node),
            // the root's heaviest child is (1), which opens a nonatomic subtree
            _ => Some(Vector::zero(self.dim())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    fn seeded(n: u64) -> FiniteAtomicOracle {
        FiniteAtomicOracle::with_truth(n, Exponent::integer(3).unwrap(), &LeftCEReal::seed()).unwrap()
    }

    #[test]
    fn closed_form_masses() {
        let o = seeded(2);
        assert_eq!(o.mass(&NodePath::root()), Some(ratio(8, 3)));
        assert_eq!(o.mass(&NodePath::from([0, 0])), Some(ratio(1, 2)));
        assert_eq!(o.mass(&NodePath::from([0, 1])), Some(ratio(1, 6)));
        assert_eq!(o.mass(&NodePath::from([1, 0, 1])), Some(ratio(1, 4)));
        assert_eq!(o.mass(&NodePath::from([2])), Some(ratio(1, 1)));
        assert_eq!(o.mass(&NodePath::from([3])), None);
        assert_eq!(o.mass(&NodePath::from([0, 2])), None);
    }

    #[test]
    fn labels_match_masses() {
        let o = seeded(3);
        let p = o.exponent().clone();
        for node in [
            NodePath::root(),
            NodePath::from([0]),
            NodePath::from([0, 0, 0]),
            NodePath::from([0, 0, 1, 1]),
            NodePath::from([1, 1]),
            NodePath::from([3]),
        ] {
            let m = o.mass(&node).unwrap();
            assert!(o.label(&node).unwrap().norm_p(&p, 20).contains_rational(&m), "{node:?}");
        }
    }
}
