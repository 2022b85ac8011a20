use serde::{Deserialize, Serialize};

use super::partition::ChainPartition;
use crate::arith::{nested, Dyadic, DyadicInterval, Rational};
use crate::error::Result;
use crate::tree::{NodePath, PresentationOracle};
use crate::vectors::{ApproxVector, Vector, VectorJson};

/// What is known at finite depth about the infimum `g_j` of chain `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomApprox {
    pub chain_id: usize,
    /// The deepest node of the chain.
    pub node: NodePath,
    /// `phi(node)`, when the oracle materializes labels.
    pub vector: Option<ApproxVector>,
    /// `||phi(node)||_p^p`.
    pub norm_p: DyadicInterval,
    /// `||phi(node)||_p`.
    pub norm: DyadicInterval,
    /// `||phi(node)||_p^p` minus the best lower bound on `||g_j||_p^p`; this is
    /// `||phi(node) - g_j||_p^p`, since `g_j ⪯ phi(node)`.
    pub residual_p: DyadicInterval,
    /// `g_j` itself, when the oracle knows it in closed form.
    pub limit: Option<ApproxVector>,
    pub terminal: bool,
}

impl AtomApprox {
    /// True when `g_j` is known exactly.
    pub fn is_exact(&self) -> bool {
        self.terminal || self.limit.is_some()
    }

    /// `g_j` if known exactly: the terminal label or the closed-form limit.
    pub fn exact_limit(&self) -> Option<&ApproxVector> {
        if self.terminal {
            self.vector.as_ref().or(self.limit.as_ref())
        } else {
            self.limit.as_ref()
        }
    }

    pub fn to_json(&self) -> AtomJson {
        AtomJson {
            chain_id: self.chain_id,
            node: self.node.clone(),
            vector: self.vector.as_ref().map(Vector::to_json),
            norm_p: self.norm_p.clone(),
            norm: self.norm.clone(),
            residual_p: self.residual_p.clone(),
            limit: self.limit.as_ref().map(Vector::to_json),
            terminal: self.terminal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomJson {
    pub chain_id: usize,
    pub node: NodePath,
    pub vector: Option<VectorJson>,
    pub norm_p: DyadicInterval,
    pub norm: DyadicInterval,
    pub residual_p: DyadicInterval,
    pub limit: Option<VectorJson>,
    pub terminal: bool,
}

/// `||phi(node)||_p` from the oracle's p-masses, width `< 2^-k`.
pub fn node_norm<O: PresentationOracle + ?Sized>(oracle: &O, node: &NodePath, k: u32) -> Result<DyadicInterval> {
    let p = oracle.exponent().clone();
    nested(k, |prec| {
        oracle
            .node_norm_p(node, prec * p.ceil() + 8)?
            .clamp_nonneg()
            .root(&p, prec)
    })
}

/// Data on the infimum of chain `id` read off its deepest node.
pub fn chain_limit<O: PresentationOracle + ?Sized>(
    oracle: &O,
    partition: &ChainPartition,
    id: usize,
    k: u32,
) -> Result<AtomApprox> {
    let chain = partition.chain(id)?;
    let top = chain.top().clone();
    let terminal = oracle.is_terminal(&top) == Some(true);
    let norm_p = oracle.node_norm_p(&top, k)?;
    let norm = node_norm(oracle, &top, k)?;
    let limit = if terminal { None } else { oracle.limit_hint(&top) };
    let residual_p = if terminal {
        DyadicInterval::zero()
    } else if let Some(g) = &limit {
        let p = oracle.exponent();
        &oracle.node_norm_p(&top, k + 1)? - &g.norm_p(p, k + 1)
    } else {
        norm_p.clone()
    };
    Ok(AtomApprox {
        chain_id: id,
        node: top.clone(),
        vector: oracle.label(&top),
        norm_p,
        norm,
        residual_p,
        limit,
        terminal,
    })
}

/// Classification of chains into atoms and vanishing chains.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomReport {
    pub candidates: Vec<AtomApprox>,
    /// Chains whose top norm is below `eps` at this depth (not a proof that the limit is 0).
    pub vanishing: Vec<usize>,
    /// Chains whose norm enclosure straddles `eps`.
    pub undecided: Vec<usize>,
    /// Pairwise support-disjointness of the candidates' vectors, when materializable.
    pub disjoint: Option<bool>,
}

/// Candidate atoms: chains with a known nonzero limit, a terminal nonzero top,
/// or otherwise a top norm enclosure that stays `>= eps`.
pub fn extract_atoms<O: PresentationOracle + ?Sized>(
    oracle: &O,
    partition: &ChainPartition,
    eps: &Rational,
    k: u32,
) -> Result<AtomReport> {
    let mut candidates = Vec::new();
    let mut vanishing = Vec::new();
    let mut undecided = Vec::new();
    for chain in &partition.chains {
        let a = chain_limit(oracle, partition, chain.id, k)?;
        let known = a.exact_limit().map(|g| !g.is_zero());
        let above = a.norm.lo().to_rational() >= *eps;
        let below = a.norm.hi().to_rational() < *eps;
        match known {
            Some(true) => candidates.push(a),
            Some(false) => vanishing.push(chain.id),
            None if a.terminal && a.norm.lo() > &Dyadic::zero() => candidates.push(a),
            None if above => candidates.push(a),
            None if below => vanishing.push(chain.id),
            None => undecided.push(chain.id),
        }
    }
    let vectors: Option<Vec<&ApproxVector>> = candidates
        .iter()
        .map(|a| a.exact_limit().or(a.vector.as_ref()))
        .collect();
    let disjoint = vectors.map(|vs| {
        vs.iter()
            .enumerate()
            .all(|(i, u)| vs[i + 1..].iter().all(|v| u.support_disjoint(v)))
    });
    Ok(AtomReport {
        candidates,
        vanishing,
        undecided,
        disjoint,
    })
}
