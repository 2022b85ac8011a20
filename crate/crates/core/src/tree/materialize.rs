use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::disintegration::ConcreteDisintegration;
use super::oracle::PresentationOracle;
use super::path::NodePath;
use crate::error::{Error, Result};
use crate::vectors::Vector;

/// Materializes every node enumerated by `stage` up to `depth`.
///
/// A node is put on the frontier when it has children that were not
/// materialized: it sits at `depth`, or it may gain children at a later stage
/// (its mass is not yet exhausted by the enumerated ones). A node without a
/// finite label, such as a root with infinitely many children, is labelled
/// with the sum of its materialized children and put on the frontier.
pub fn materialize<O: PresentationOracle + ?Sized>(oracle: &O, depth: usize, stage: u64) -> Result<ConcreteDisintegration> {
    let mut order = Vec::new();
    let mut queue = VecDeque::from([NodePath::root()]);
    let mut kids: BTreeMap<NodePath, Vec<NodePath>> = BTreeMap::new();
    while let Some(node) = queue.pop_front() {
        let ch = oracle.children(&node, stage);
        if node.len() < depth {
            queue.extend(ch.iter().cloned());
            kids.insert(node.clone(), ch);
        }
        order.push(node);
    }
    let mut labels = BTreeMap::new();
    let mut frontier = BTreeSet::new();
    for node in order.iter().rev() {
        let materialized = kids.get(node).map_or(&[][..], Vec::as_slice);
        let label = match oracle.label(node) {
            Some(v) => v,
            None if !materialized.is_empty() => {
                frontier.insert(node.clone());
                let mut acc = Vector::zero(oracle.dim());
                for c in materialized {
                    acc = acc.add(&labels[c])?;
                }
                acc
            }
            None => return Err(Error::Unmaterializable(format!("no label for node '{node}'"))),
        };
        let cut = node.len() >= depth && oracle.is_terminal(node) != Some(true);
        let growing = materialized.is_empty() && oracle.is_terminal(node) != Some(true);
        let unfinished = !materialized.is_empty() && !oracle.children_final(node, stage);
        if cut || growing || unfinished {
            frontier.insert(node.clone());
        }
        labels.insert(node.clone(), label);
    }
    ConcreteDisintegration::new(labels, frontier)
}
