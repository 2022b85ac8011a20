use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::path::NodePath;
use crate::arith::{Exponent, GaussianRational};
use crate::error::{Error, Result};
use crate::vectors::{ApproxVector, Support, Vector, VectorJson};

/// A finite, materialized truncation of a disintegration `phi: S -> L^p`.
///
/// `frontier` marks nodes whose materialized child set is incomplete: the
/// ideal tree has more children there than are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteDisintegration {
    labels: BTreeMap<NodePath, ApproxVector>,
    children: BTreeMap<NodePath, Vec<NodePath>>,
    frontier: BTreeSet<NodePath>,
}

impl ConcreteDisintegration {
    pub fn new(labels: BTreeMap<NodePath, ApproxVector>, frontier: BTreeSet<NodePath>) -> Result<Self> {
        if !labels.contains_key(&NodePath::root()) {
            return Err(Error::InvalidTree("the root is missing".into()));
        }
        let mut children: BTreeMap<NodePath, Vec<NodePath>> = BTreeMap::new();
        let dim = labels[&NodePath::root()].dim();
        for (node, v) in &labels {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(dim.to_string(), v.dim().to_string()));
            }
            if let Some(parent) = node.parent() {
                if !labels.contains_key(&parent) {
                    return Err(Error::InvalidTree(format!("node {node} has no parent in the tree")));
                }
                children.entry(parent).or_default().push(node.clone());
            }
        }
        if let Some(f) = frontier.iter().find(|f| !labels.contains_key(*f)) {
            return Err(Error::InvalidTree(format!("frontier node {f} is not in the tree")));
        }
        Ok(ConcreteDisintegration {
            labels,
            children,
            frontier,
        })
    }

    pub fn labels(&self) -> &BTreeMap<NodePath, ApproxVector> {
        &self.labels
    }

    pub fn label(&self, node: &NodePath) -> Option<&ApproxVector> {
        self.labels.get(node)
    }

    pub fn contains(&self, node: &NodePath) -> bool {
        self.labels.contains_key(node)
    }

    pub fn children(&self, node: &NodePath) -> &[NodePath] {
        self.children.get(node).map_or(&[], Vec::as_slice)
    }

    pub fn frontier(&self) -> &BTreeSet<NodePath> {
        &self.frontier
    }

    pub fn is_frontier(&self, node: &NodePath) -> bool {
        self.frontier.contains(node)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodePath> {
        self.labels.keys()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.labels.keys().map(NodePath::len).max().unwrap_or(0)
    }

    /// `sum_nu coeffs(nu) * phi(nu)` over materialized nodes.
    pub fn combine(&self, coeffs: &BTreeMap<NodePath, GaussianRational>) -> Result<ApproxVector> {
        let mut acc = Vector::zero(self.labels[&NodePath::root()].dim());
        for (node, a) in coeffs {
            let v = self.labels.get(node).ok_or_else(|| Error::NotInTree(node.clone()))?;
            acc = acc.add(&v.scale(a))?;
        }
        Ok(acc)
    }

    /// Checks the disintegration axioms exactly on the materialized tree.
    pub fn validate(&self, p: &Exponent) -> ValidationReport {
        let mut violations = Vec::new();

        let mut summative = true;
        for (node, kids) in &self.children {
            if self.is_frontier(node) {
                continue;
            }
            let mut sum = Vector::zero(self.labels[node].dim());
            for c in kids {
                sum = sum.add(&self.labels[c]).expect("dimensions are checked on construction");
            }
            if sum != self.labels[node] {
                summative = false;
                violations.push(format!("summative: label of '{node}' differs from the sum of its children"));
            }
        }

        // Incomparable nodes are disjoint iff, at every branching, the unions of
        // supports over distinct sibling subtrees are disjoint.
        let mut separating = true;
        let mut subtree_support: BTreeMap<NodePath, Support> = BTreeMap::new();
        for (node, label) in self.labels.iter().rev() {
            let kids = self.children(node);
            for (i, a) in kids.iter().enumerate() {
                for b in &kids[i + 1..] {
                    if !subtree_support[a].is_disjoint(&subtree_support[b]) {
                        separating = false;
                        violations.push(format!("separating: subtrees at '{a}' and '{b}' overlap"));
                    }
                }
            }
            let mut s = label.support();
            for c in kids {
                s = s.union(&subtree_support[c]);
            }
            subtree_support.insert(node.clone(), s);
        }

        let mut seen = HashSet::new();
        let mut injective = true;
        for (node, label) in &self.labels {
            if !seen.insert(label) {
                injective = false;
                violations.push(format!("injective: label of '{node}' repeats an earlier label"));
            }
        }

        let mut non_vanishing = true;
        for (node, label) in &self.labels {
            if label.is_zero() {
                non_vanishing = false;
                violations.push(format!("non-vanishing: label of '{node}' is zero"));
            }
        }

        let mut warnings = Vec::new();
        if p.is_hilbert() {
            warnings.push("p = 2: the theory assumes p != 2".to_string());
        }
        ValidationReport {
            summative,
            separating,
            injective,
            non_vanishing,
            linear_density: "not evaluated".into(),
            nodes: self.len(),
            frontier: self.frontier.len(),
            violations,
            warnings,
        }
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            nodes: self
                .labels
                .iter()
                .map(|(node, v)| NodeJson {
                    path: node.0.clone(),
                    label: v.to_json(),
                    frontier: self.is_frontier(node),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &TreeJson) -> Result<Self> {
        let mut labels = BTreeMap::new();
        let mut frontier = BTreeSet::new();
        for n in &j.nodes {
            let path = NodePath(n.path.clone());
            if n.frontier {
                frontier.insert(path.clone());
            }
            if labels.insert(path.clone(), Vector::from_json(&n.label)?).is_some() {
                return Err(Error::InvalidTree(format!("node '{path}' listed twice")));
            }
        }
        Self::new(labels, frontier)
    }
}

/// Outcome of [`ConcreteDisintegration::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub summative: bool,
    pub separating: bool,
    pub injective: bool,
    pub non_vanishing: bool,
    pub linear_density: String,
    pub nodes: usize,
    pub frontier: usize,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.summative && self.separating && self.injective && self.non_vanishing
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub path: Vec<u64>,
    pub label: VectorJson,
    #[serde(default)]
    pub frontier: bool,
}

/// Wire format: `{"nodes": [{"path": [0, 1], "label": <vector>, "frontier": false}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeJson {
    pub nodes: Vec<NodeJson>,
}
