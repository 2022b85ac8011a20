use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::disintegration::ConcreteDisintegration;
use super::path::NodePath;
use crate::arith::{DyadicInterval, Exponent};
use crate::error::{Error, Result};
use crate::vectors::{ApproxVector, Dim};

/// Three-valued stagewise membership in a c.e. tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    In,
    Out,
    Unknown,
}

/// A computable presentation given by a disintegration, queried stagewise.
///
/// Implementations must be monotone in `stage` (membership never goes from
/// `In` to anything else, enumerated children only accumulate) and return
/// enclosures that are nested in `k`.
pub trait PresentationOracle {
    fn exponent(&self) -> &Exponent;

    fn dim(&self) -> Dim;

    fn member(&self, node: &NodePath, stage: u64) -> Membership;

    /// Children enumerated by `stage`, ordered by last index.
    fn children(&self, node: &NodePath, stage: u64) -> Vec<NodePath>;

    /// `||phi(node)||_p^p`, width `<= 2^-k`.
    fn node_norm_p(&self, node: &NodePath, k: u32) -> Result<DyadicInterval>;

    /// `||phi(node)||_p^p - sum of the enumerated children's p-masses`, width `<= 2^-k`.
    fn residual_mass(&self, node: &NodePath, stage: u64, k: u32) -> Result<DyadicInterval> {
        let kids = self.children(node, stage);
        let extra = 65 - (kids.len() as u64 + 1).leading_zeros();
        let mut r = self.node_norm_p(node, k + extra)?;
        for c in &kids {
            r = &r - &self.node_norm_p(c, k + extra)?;
        }
        Ok(r)
    }

    /// True when no child beyond those enumerated by `stage` will ever appear.
    fn children_final(&self, _node: &NodePath, _stage: u64) -> bool {
        true
    }

    /// `Some(true)` if the node provably has no children at any stage.
    fn is_terminal(&self, _node: &NodePath) -> Option<bool> {
        None
    }

    /// The vector `phi(node)`, when the oracle can materialize it.
    fn label(&self, _node: &NodePath) -> Option<ApproxVector> {
        None
    }

    /// The limit of the almost norm-maximizing chain continued from `node`
    /// (smallest-index tie-break), when the oracle knows it in closed form.
    fn limit_hint(&self, _node: &NodePath) -> Option<ApproxVector> {
        None
    }

    /// Requires `node` to be enumerated by `stage`.
    fn require_member(&self, node: &NodePath, stage: u64) -> Result<()> {
        match self.member(node, stage) {
            Membership::In => Ok(()),
            _ => Err(Error::NotInTree(node.clone())),
        }
    }
}

/// A materialized disintegration served as an oracle. Nodes may be given a
/// reveal stage; they are `Unknown` before it.
#[derive(Clone, Debug)]
pub struct ConcreteOracle {
    tree: ConcreteDisintegration,
    p: Exponent,
    reveal: BTreeMap<NodePath, u64>,
}

impl ConcreteOracle {
    pub fn new(tree: ConcreteDisintegration, p: Exponent) -> Self {
        ConcreteOracle {
            tree,
            p,
            reveal: BTreeMap::new(),
        }
    }

    /// Reveal stages are made monotone along paths: a node never appears
    /// before its parent.
    pub fn with_reveal(mut self, reveal: BTreeMap<NodePath, u64>) -> Self {
        let mut fixed = BTreeMap::new();
        for node in self.tree.nodes() {
            let own = reveal.get(node).copied().unwrap_or(0);
            let parent = node.parent().map_or(0, |q| fixed.get(&q).copied().unwrap_or(0));
            fixed.insert(node.clone(), own.max(parent));
        }
        self.reveal = fixed;
        self
    }

    pub fn tree(&self) -> &ConcreteDisintegration {
        &self.tree
    }

    fn reveal_stage(&self, node: &NodePath) -> u64 {
        self.reveal.get(node).copied().unwrap_or(0)
    }
}

impl PresentationOracle for ConcreteOracle {
    fn exponent(&self) -> &Exponent {
        &self.p
    }

    fn dim(&self) -> Dim {
        self.tree.label(&NodePath::root()).expect("trees have a root").dim()
    }

    fn member(&self, node: &NodePath, stage: u64) -> Membership {
        if self.tree.contains(node) {
            return if self.reveal_stage(node) <= stage {
                Membership::In
            } else {
                Membership::Unknown
            };
        }
        let anchor = node
            .prefixes()
            .take_while(|q| self.tree.contains(q))
            .last()
            .expect("the root is always in the tree");
        if self.tree.is_frontier(&anchor) {
            return Membership::Unknown;
        }
        let settled = self.tree.children(&anchor).iter().all(|c| self.reveal_stage(c) <= stage)
            && self.reveal_stage(&anchor) <= stage;
        if settled {
            Membership::Out
        } else {
            Membership::Unknown
        }
    }

    fn children(&self, node: &NodePath, stage: u64) -> Vec<NodePath> {
        let mut kids: Vec<NodePath> = self
            .tree
            .children(node)
            .iter()
            .filter(|c| self.reveal_stage(c) <= stage)
            .cloned()
            .collect();
        kids.sort_by_key(|c| c.last());
        kids
    }

    fn node_norm_p(&self, node: &NodePath, k: u32) -> Result<DyadicInterval> {
        let label = self.tree.label(node).ok_or_else(|| Error::NotInTree(node.clone()))?;
        Ok(label.norm_p(&self.p, k))
    }

    fn children_final(&self, node: &NodePath, stage: u64) -> bool {
        !self.tree.is_frontier(node) && self.tree.children(node).iter().all(|c| self.reveal_stage(c) <= stage)
    }

    fn is_terminal(&self, node: &NodePath) -> Option<bool> {
        if !self.tree.children(node).is_empty() {
            Some(false)
        } else if self.tree.is_frontier(node) || !self.tree.contains(node) {
            None
        } else {
            Some(true)
        }
    }

    fn label(&self, node: &NodePath) -> Option<ApproxVector> {
        self.tree.label(node).cloned()
    }
}
