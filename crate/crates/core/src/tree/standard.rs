use num_traits::{One, Zero};

use super::oracle::{Membership, PresentationOracle};
use super::path::NodePath;
use crate::arith::rational::pow2;
use crate::arith::{DyadicInterval, Exponent, GaussianRational, Rational, Surd};
use crate::error::{Error, Result};
use crate::vectors::{ApproxVector, Dim, StepFunction, Vector};

/// The standard presentation of `l^p_n (+) L^p[0,1]` as a disintegration.
///
/// With `atoms = 0` this is the full binary tree of dyadic intervals. With
/// `atoms = n > 0` the root is `(e_0 + ... + e_{n-1}, chi_[0,1])`, child `(0)`
/// starts the dyadic tree and child `(j)`, `1 <= j <= n`, is the terminal `e_{j-1}`.
#[derive(Clone, Debug)]
pub struct StandardPresentation {
    atoms: u64,
    p: Exponent,
}

impl StandardPresentation {
    pub fn new(atoms: u64, p: Exponent) -> Self {
        StandardPresentation { atoms, p }
    }

    pub fn dyadic(p: Exponent) -> Self {
        Self::new(0, p)
    }

    pub fn atoms(&self) -> u64 {
        self.atoms
    }

    /// The binary digits addressing a dyadic interval, if `node` is one.
    fn dyadic_tail<'a>(&self, node: &'a NodePath) -> Option<&'a [u64]> {
        let tail = if self.atoms == 0 {
            &node.0[..]
        } else {
            match node.0.split_first() {
                Some((0, rest)) => rest,
                _ => return None,
            }
        };
        tail.iter().all(|&b| b < 2).then_some(tail)
    }

    fn atom_index(&self, node: &NodePath) -> Option<u64> {
        match node.0[..] {
            [j] if self.atoms > 0 && (1..=self.atoms).contains(&j) => Some(j - 1),
            _ => None,
        }
    }

    pub fn contains(&self, node: &NodePath) -> bool {
        node.is_root() || self.dyadic_tail(node).is_some() || self.atom_index(node).is_some()
    }

    /// The node whose label is `chi` of the dyadic interval `[index/2^level, (index+1)/2^level)`.
    pub fn dyadic_node(&self, level: u32, index: u64) -> NodePath {
        let mut path: Vec<u64> = (0..level).rev().map(|i| (index >> i) & 1).collect();
        if self.atoms > 0 {
            path.insert(0, 0);
        }
        NodePath(path)
    }

    /// The node labelled `e_i`.
    pub fn atom_node(&self, i: u64) -> NodePath {
        NodePath(vec![i + 1])
    }

    fn vector_dim(&self) -> Dim {
        Dim::Finite(self.atoms)
    }

    fn mass(&self, node: &NodePath) -> Option<Rational> {
        if node.is_root() {
            return Some(Rational::from_integer((self.atoms as i64 + 1).into()));
        }
        if let Some(tail) = self.dyadic_tail(node) {
            return Some(pow2(-(tail.len() as i64)));
        }
        self.atom_index(node).map(|_| Rational::one())
    }
}

/// `[a, b)` addressed by binary digits.
pub fn dyadic_interval(bits: &[u64]) -> (Rational, Rational) {
    let mut a = Rational::zero();
    for (i, &b) in bits.iter().enumerate() {
        if b == 1 {
            a += pow2(-(i as i64 + 1));
        }
    }
    let b = &a + pow2(-(bits.len() as i64));
    (a, b)
}

impl PresentationOracle for StandardPresentation {
    fn exponent(&self) -> &Exponent {
        &self.p
    }

    fn dim(&self) -> Dim {
        self.vector_dim()
    }

    fn member(&self, node: &NodePath, _stage: u64) -> Membership {
        if self.contains(node) {
            Membership::In
        } else {
            Membership::Out
        }
    }

    fn children(&self, node: &NodePath, _stage: u64) -> Vec<NodePath> {
        if node.is_root() && self.atoms > 0 {
            return (0..=self.atoms).map(|j| node.child(j)).collect();
        }
        if self.dyadic_tail(node).is_some() {
            return vec![node.child(0), node.child(1)];
        }
        Vec::new()
    }

    fn node_norm_p(&self, node: &NodePath, k: u32) -> Result<DyadicInterval> {
        let m = self.mass(node).ok_or_else(|| Error::NotInTree(node.clone()))?;
        Ok(DyadicInterval::from_rational(&m, k))
    }

    fn is_terminal(&self, node: &NodePath) -> Option<bool> {
        self.contains(node).then(|| self.atom_index(node).is_some())
    }

    fn label(&self, node: &NodePath) -> Option<ApproxVector> {
        let one = || Surd::from_gauss(GaussianRational::one());
        let dim = self.vector_dim();
        if node.is_root() {
            let mut v = Vector::continuous(StepFunction::constant(one()), dim);
            for i in 0..self.atoms {
                v = v.add(&Vector::atom(i, one(), dim).ok()?).ok()?;
            }
            return Some(v);
        }
        if let Some(tail) = self.dyadic_tail(node) {
            let (a, b) = dyadic_interval(tail);
            return Vector::indicator(&a, &b, one(), dim).ok();
        }
        let i = self.atom_index(node)?;
        Vector::atom(i, one(), dim).ok()
    }

    fn limit_hint(&self, node: &NodePath) -> Option<ApproxVector> {
        if self.atom_index(node).is_some() {
            return self.label(node);
        }
        // the root's chain enters the dyadic subtree by the tie-break
        self.contains(node).then(|| Vector::zero(self.vector_dim()))
    }
}
