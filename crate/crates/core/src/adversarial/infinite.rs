use num_traits::One;

use super::schedule::CESetSchedule;
use crate::arith::rational::{int, pow2, powi};
use crate::arith::{nested, rat_pow, DyadicInterval, Exponent, GaussianRational, Rational, Surd};
use crate::error::{Error, Result};
use crate::tree::{dyadic_interval, Membership, NodePath, PresentationOracle};
use crate::vectors::{ApproxVector, Dim, Vector};

/// The presentation of `l^p (+) L^p[0,1]` in which the subtree below `(e)` is
/// atomic exactly when `W_e` is finite.
///
/// `(e) alpha` (binary `alpha`) is enumerated once `#W_{e,s} >= |alpha|` and
/// `e <= s`, so a finite `W_e` with `m_e` elements yields `2^{m_e}` leaves.
/// Every node mass is `2^{-(e+1)p - |alpha|}` whether or not `W_e` is finite.
/// With ground truth attached, labels place the finite `e` on blocks of
/// `2^{m_e}` consecutive atoms and the others on `J_e = [1 - 2^-e, 1 - 2^-(e+1)]`.
/// Indices beyond the listed schedules use the empty set.
#[derive(Clone, Debug)]
pub struct InfiniteAtomicOracle {
    p: Exponent,
    schedules: Vec<CESetSchedule>,
    truth: bool,
}

impl InfiniteAtomicOracle {
    pub fn new(p: Exponent, schedules: Vec<CESetSchedule>) -> Self {
        InfiniteAtomicOracle {
            p,
            schedules,
            truth: false,
        }
    }

    /// Same oracle, with the harness's knowledge of which `W_e` are finite.
    pub fn with_truth(p: Exponent, schedules: Vec<CESetSchedule>) -> Self {
        InfiniteAtomicOracle {
            truth: true,
            ..Self::new(p, schedules)
        }
    }

    pub fn schedules(&self) -> &[CESetSchedule] {
        &self.schedules
    }

    fn schedule(&self, e: u64) -> Option<&CESetSchedule> {
        self.schedules.get(e as usize)
    }

    fn count(&self, e: u64, stage: u64) -> u64 {
        self.schedule(e).map_or(0, |s| s.count_at(stage))
    }

    /// `m_e = #W_e` when `W_e` is finite (ground truth).
    pub fn m(&self, e: u64) -> Option<u64> {
        self.schedule(e).map_or(Some(0), CESetSchedule::size)
    }

    pub fn in_fin(&self, e: u64) -> bool {
        self.m(e).is_some()
    }

    fn split<'a>(&self, node: &'a NodePath) -> Option<(u64, &'a [u64])> {
        let (&e, alpha) = node.0.split_first()?;
        alpha.iter().all(|&b| b < 2).then_some((e, alpha))
    }

    /// Index of the first atom of the block of `e` (ground truth).
    fn offset(&self, e: u64) -> u64 {
        (0..e).filter_map(|f| self.m(f)).map(|m| 1u64 << m).sum()
    }

    fn dim(&self) -> Dim {
        Dim::Omega
    }

    /// `2^{-(e+1)p - t}` as an exact rational when `p` is an integer.
    fn mass_exact(&self, e: u64, t: usize) -> Option<Rational> {
        let p = self.p.value();
        p.is_integer()
            .then(|| pow2(-(((e as i64) + 1) * p.to_integer().try_into().unwrap_or(i64::MAX)) - t as i64))
    }

    fn node_mass(&self, e: u64, t: usize, k: u32) -> Result<DyadicInterval> {
        if let Some(m) = self.mass_exact(e, t) {
            return Ok(DyadicInterval::from_rational(&m, k));
        }
        let ex = -(int(e as i64 + 1) * self.p.value()) - int(t as i64);
        rat_pow(&int(2), &ex, k)
    }

    /// `2^{-(s+1)p} / (2^p - 1)`, the p-mass of all `(e)` with `e > s`.
    fn tail_mass(&self, s: Option<u64>, k: u32) -> Result<DyadicInterval> {
        let first = s.map_or(0, |s| s + 1);
        let p = self.p.value().clone();
        if p.is_integer() {
            let two_p = powi(&int(2), p.to_integer().try_into().unwrap_or(i64::MAX));
            let m = powi(&two_p, -(first as i64)) / (two_p - Rational::one());
            return Ok(DyadicInterval::from_rational(&m, k));
        }
        nested(k, |prec| {
            let wp = prec + 4;
            let two_p = rat_pow(&int(2), &p, wp)?;
            let denom = (&two_p - &DyadicInterval::one()).recip(wp)?;
            let head = rat_pow(&int(2), &(-(int(first as i64) * &p)), wp)?;
            Ok((&head * &denom).round_out(wp))
        })
    }

    fn label_of(&self, e: u64, alpha: &[u64]) -> Option<ApproxVector> {
        let dim = self.dim();
        let p = self.p.value();
        match self.m(e) {
            Some(m) => {
                let t = alpha.len() as u64;
                if t > m {
                    return None;
                }
                let ex = -(int(e as i64 + 1)) - int(m as i64) / p;
                let c = Surd::radical(GaussianRational::one(), &int(2), &ex).ok()?;
                let a = alpha.iter().fold(0u64, |acc, &b| 2 * acc + b);
                let width = 1u64 << (m - t);
                let first = self.offset(e) + a * width;
                let mut v = Vector::zero(dim);
                for i in first..first + width {
                    v = v.add(&Vector::atom(i, c.clone(), dim).ok()?).ok()?;
                }
                Some(v)
            }
            None => {
                let ex = -(int(e as i64 + 1)) * (p - Rational::one()) / p;
                let c = Surd::radical(GaussianRational::one(), &int(2), &ex).ok()?;
                let lo = Rational::one() - pow2(-(e as i64));
                let w = pow2(-(e as i64 + 1));
                let (a, b) = dyadic_interval(alpha);
                Vector::indicator(&(&lo + &w * a), &(&lo + &w * b), c, dim).ok()
            }
        }
    }

    /// The atoms below `(e)` (empty unless `e` is in Fin).
    pub fn true_atoms(&self, e: u64) -> Vec<ApproxVector> {
        let Some(m) = self.m(e) else {
            return Vec::new();
        };
        let Some(block) = self.label_of(e, &[]) else {
            return Vec::new();
        };
        block
            .atoms()
            .iter()
            .filter_map(|(&i, c)| Vector::atom(i, c.clone(), self.dim()).ok())
            .take(1 << m)
            .collect()
    }
}

impl PresentationOracle for InfiniteAtomicOracle {
    fn exponent(&self) -> &Exponent {
        &self.p
    }

    fn dim(&self) -> Dim {
        InfiniteAtomicOracle::dim(self)
    }

    fn member(&self, node: &NodePath, stage: u64) -> Membership {
        if node.is_root() {
            return Membership::In;
        }
        let Some((e, alpha)) = self.split(node) else {
            return Membership::Out;
        };
        if e <= stage && self.count(e, stage) >= alpha.len() as u64 {
            Membership::In
        } else if self.truth && self.m(e).is_some_and(|m| alpha.len() as u64 > m) {
            Membership::Out
        } else {
            Membership::Unknown
        }
    }

    fn children(&self, node: &NodePath, stage: u64) -> Vec<NodePath> {
        if node.is_root() {
            return (0..=stage).map(|e| node.child(e)).collect();
        }
        if self.member(node, stage) != Membership::In {
            return Vec::new();
        }
        let (e, alpha) = self.split(node).expect("members are well formed");
        if self.count(e, stage) > alpha.len() as u64 {
            vec![node.child(0), node.child(1)]
        } else {
            Vec::new()
        }
    }

    fn node_norm_p(&self, node: &NodePath, k: u32) -> Result<DyadicInterval> {
        if node.is_root() {
            return self.tail_mass(None, k);
        }
        let (e, alpha) = self.split(node).ok_or_else(|| Error::NotInTree(node.clone()))?;
        self.node_mass(e, alpha.len(), k)
    }

    fn residual_mass(&self, node: &NodePath, stage: u64, k: u32) -> Result<DyadicInterval> {
        if node.is_root() {
            return self.tail_mass(Some(stage), k);
        }
        let kids = self.children(node, stage);
        if kids.is_empty() {
            return self.node_norm_p(node, k);
        }
        Ok(DyadicInterval::zero())
    }

    fn children_final(&self, node: &NodePath, _stage: u64) -> bool {
        // below the root, children come in enumerated pairs
        !node.is_root()
    }

    fn is_terminal(&self, node: &NodePath) -> Option<bool> {
        if !self.truth {
            return None;
        }
        if node.is_root() {
            return Some(false);
        }
        let (e, alpha) = self.split(node)?;
        Some(self.m(e).is_some_and(|m| alpha.len() as u64 == m))
    }

    fn label(&self, node: &NodePath) -> Option<ApproxVector> {
        if !self.truth || node.is_root() {
            return None;
        }
        let (e, alpha) = self.split(node)?;
        self.label_of(e, alpha)
    }

    fn limit_hint(&self, node: &NodePath) -> Option<ApproxVector> {
        if !self.truth {
            return None;
        }
        let (e, alpha) = if node.is_root() { (0, &[][..]) } else { self.split(node)? };
        match self.m(e) {
            Some(m) if alpha.len() as u64 <= m => {
                let mut leaf = alpha.to_vec();
                leaf.resize(m as usize, 0);
                self.label_of(e, &leaf)
            }
            Some(_) => None,
            None => Some(Vector::zero(self.dim())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    fn oracle() -> InfiniteAtomicOracle {
        let fin = CESetSchedule::finite([(3, 0), (7, 2)]).unwrap();
        let tot = CESetSchedule::new(vec![(0, 1)], true).unwrap();
        InfiniteAtomicOracle::with_truth(Exponent::integer(3).unwrap(), vec![fin, tot])
    }

    #[test]
    fn masses_and_membership() {
        let o = oracle();
        let root = o.node_norm_p(&NodePath::root(), 10).unwrap();
        assert!(root.contains_rational(&ratio(1, 7)));
        assert!(o.node_norm_p(&NodePath::from([0]), 10).unwrap().contains_rational(&ratio(1, 8)));
        assert!(o.node_norm_p(&NodePath::from([1, 0]), 10).unwrap().contains_rational(&ratio(1, 128)));
        assert_eq!(o.member(&NodePath::from([0, 0, 1]), 1), Membership::Unknown);
        assert_eq!(o.member(&NodePath::from([0, 0, 1]), 2), Membership::In);
        assert_eq!(o.member(&NodePath::from([0, 0, 1, 0]), 50), Membership::Out);
        assert_eq!(o.children(&NodePath::root(), 3).len(), 4);
    }

    #[test]
    fn labels_match_masses() {
        let o = oracle();
        let p = o.exponent().clone();
        for node in [[0, 1], [1, 0], [2, 0]] {
            let node = NodePath::from(node);
            if let Some(v) = o.label(&node) {
                assert!(v.norm_p(&p, 20).overlaps(&o.node_norm_p(&node, 20).unwrap()), "{node:?}");
            }
        }
        assert_eq!(o.true_atoms(0).len(), 4);
        assert!(o.true_atoms(1).is_empty());
        assert_eq!(o.true_atoms(2).len(), 1);
        assert_eq!(o.offset(2), 4);
    }
}
