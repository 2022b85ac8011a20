use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::select::{select_anm_child, Certificate};
use crate::error::{Error, Result};
use crate::tree::{Membership, NodePath, PresentationOracle};

/// A chain `nu_0 ⊂ nu_1 ⊂ ...` of consecutive parent/child nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chain {
    pub id: usize,
    pub nodes: Vec<NodePath>,
    /// False only when the top node is known to be terminal.
    pub open: bool,
    /// One certificate per step, `certificates[i]` justifying `nodes[i + 1]`.
    pub certificates: Vec<Certificate>,
}

impl Chain {
    pub fn start(&self) -> &NodePath {
        &self.nodes[0]
    }

    pub fn top(&self) -> &NodePath {
        self.nodes.last().expect("chains are nonempty")
    }
}

/// Assignment of every enumerated node up to `depth` to an almost
/// norm-maximizing chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainPartition {
    pub assignment: BTreeMap<NodePath, usize>,
    pub chains: Vec<Chain>,
    pub stage: u64,
    pub depth: usize,
}

impl ChainPartition {
    pub fn chain(&self, id: usize) -> Result<&Chain> {
        self.chains.get(id).ok_or(Error::NoSuchChain(id))
    }

    pub fn chain_of(&self, node: &NodePath) -> Option<usize> {
        self.assignment.get(node).copied()
    }

    /// `U_nu`: chains whose downset contains `node`.
    pub fn chains_through(&self, node: &NodePath) -> Vec<usize> {
        self.chains
            .iter()
            .filter(|c| node.is_prefix_of(c.top()))
            .map(|c| c.id)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

/// Breadth-first over nodes enumerated by `stage` up to `depth`: each node not
/// yet covered starts a new chain, which is at once extended by
/// [`select_anm_child`] down to `depth` or until no child is enumerated.
pub fn partition_chains<O: PresentationOracle + ?Sized>(oracle: &O, depth: usize, stage: u64) -> Result<ChainPartition> {
    let mut assignment = BTreeMap::new();
    let mut chains: Vec<Chain> = Vec::new();
    let mut queue = VecDeque::new();
    let root = NodePath::root();
    if oracle.member(&root, stage) == Membership::In {
        queue.push_back(root);
    }
    while let Some(node) = queue.pop_front() {
        if !assignment.contains_key(&node) {
            let id = chains.len();
            let mut chain = Chain {
                id,
                nodes: vec![node.clone()],
                open: true,
                certificates: Vec::new(),
            };
            assignment.insert(node.clone(), id);
            let mut top = node.clone();
            while top.len() < depth && !oracle.children(&top, stage).is_empty() {
                let (child, cert) = select_anm_child(oracle, &top, stage)?;
                assignment.insert(child.clone(), id);
                chain.nodes.push(child.clone());
                chain.certificates.push(cert);
                top = child;
            }
            chain.open = oracle.is_terminal(&top) != Some(true);
            chains.push(chain);
        }
        if node.len() < depth {
            queue.extend(oracle.children(&node, stage));
        }
    }
    Ok(ChainPartition {
        assignment,
        chains,
        stage,
        depth,
    })
}
