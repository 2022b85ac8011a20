use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A node `nu` of a tree in `N^*`. The derived order is lexicographic, which is
/// depth-first preorder; [`NodePath::bfs_cmp`] gives breadth-first order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct NodePath(pub Vec<u64>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u64) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        NodePath(v)
    }

    pub fn parent(&self) -> Option<Self> {
        let (_, init) = self.0.split_last()?;
        Some(NodePath(init.to_vec()))
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// `self ⊆ other`: `self` is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &NodePath) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &NodePath) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// All prefixes from the root up to and including `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = NodePath> + '_ {
        (0..=self.0.len()).map(|i| NodePath(self.0[..i].to_vec()))
    }

    pub fn bfs_cmp(&self, other: &NodePath) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        s.parse()
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in &self.0 {
            if !first {
                f.write_str(".")?;
            }
            first = false;
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for NodePath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(NodePath::root());
        }
        s.split('.')
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("invalid node path {s:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(NodePath)
    }
}

impl From<NodePath> for String {
    fn from(p: NodePath) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for NodePath {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<Vec<u64>> for NodePath {
    fn from(v: Vec<u64>) -> Self {
        NodePath(v)
    }
}

impl<const N: usize> From<[u64; N]> for NodePath {
    fn from(v: [u64; N]) -> Self {
        NodePath(v.to_vec())
    }
}

/// `S↓`: every prefix of a member of `nodes`.
pub fn downset<'a, I>(nodes: I) -> BTreeSet<NodePath>
where
    I: IntoIterator<Item = &'a NodePath>,
{
    let mut out = BTreeSet::new();
    for n in nodes {
        for p in n.prefixes() {
            out.insert(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let p = NodePath::from([0, 1, 3]);
        assert_eq!(p.to_string(), "0.1.3");
        assert_eq!("0.1.3".parse::<NodePath>().unwrap(), p);
        assert_eq!("".parse::<NodePath>().unwrap(), NodePath::root());
        assert!("0..1".parse::<NodePath>().is_err());
    }

    #[test]
    fn downset_examples() {
        let d = downset(&[NodePath::from([0, 1])]);
        let want: BTreeSet<_> = [NodePath::root(), NodePath::from([0]), NodePath::from([0, 1])].into();
        assert_eq!(d, want);
        assert!(downset(&[]).is_empty());
        let d = downset(&[NodePath::from([2]), NodePath::from([0, 0])]);
        assert_eq!(d.len(), 4);
        assert!(d.contains(&NodePath::from([0])));
    }

    #[test]
    fn orders() {
        let a = NodePath::from([0, 1]);
        let b = NodePath::from([1]);
        assert!(a < b);
        assert_eq!(a.bfs_cmp(&b), Ordering::Greater);
        assert!(NodePath::root().is_prefix_of(&a));
        assert!(!a.comparable(&b));
    }
}
