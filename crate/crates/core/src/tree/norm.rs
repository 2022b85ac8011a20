use std::collections::{BTreeMap, BTreeSet};

use super::oracle::PresentationOracle;
use super::path::{downset, NodePath};
use crate::arith::{abs_pow, nested, DyadicInterval, GaussianRational};
use crate::error::Result;

/// Terms of the generalized leaf formula: `(sigma(nu), is_leaf)` for every node of F.
fn formula_terms<O: PresentationOracle + ?Sized>(
    oracle: &O,
    coeffs: &BTreeMap<NodePath, GaussianRational>,
    stage: u64,
) -> Result<Vec<(NodePath, GaussianRational, bool)>> {
    let support: Vec<&NodePath> = coeffs.iter().filter(|(_, a)| !a.is_zero()).map(|(n, _)| n).collect();
    for node in &support {
        oracle.require_member(node, stage)?;
    }
    let down = downset(support.iter().copied());
    let mut f: BTreeSet<NodePath> = down.clone();
    let mut internal = BTreeSet::new();
    for node in &down {
        if let Some(parent) = node.parent() {
            internal.insert(parent);
        }
    }
    for node in &internal {
        f.extend(oracle.children(node, stage));
    }
    let mut out = Vec::with_capacity(f.len());
    for node in f {
        let sigma = node
            .prefixes()
            .filter_map(|q| coeffs.get(&q))
            .fold(GaussianRational::zero(), |acc, a| &acc + a);
        if sigma.is_zero() {
            continue;
        }
        let leaf = !internal.contains(&node);
        out.push((node, sigma, leaf));
    }
    Ok(out)
}

/// `||sum_nu alpha_nu phi(nu)||_p^p` from node masses alone, width `< 2^-k`.
///
/// F is the downset of the support extended by every enumerated child of its
/// internal nodes. Leaves of F contribute `|sigma|^p ||phi||^p`, internal nodes
/// `|sigma|^p` times their residual mass, which accounts for children not yet
/// enumerated.
pub fn rational_vector_norm_p<O: PresentationOracle + ?Sized>(
    oracle: &O,
    coeffs: &BTreeMap<NodePath, GaussianRational>,
    stage: u64,
    k: u32,
) -> Result<DyadicInterval> {
    let terms = formula_terms(oracle, coeffs, stage)?;
    if terms.is_empty() {
        return Ok(DyadicInterval::zero());
    }
    nested(k, |prec| formula_value(oracle, &terms, stage, prec))
}

/// `||sum_nu alpha_nu phi(nu)||_p`, width `< 2^-k`.
pub fn rational_vector_norm<O: PresentationOracle + ?Sized>(
    oracle: &O,
    coeffs: &BTreeMap<NodePath, GaussianRational>,
    stage: u64,
    k: u32,
) -> Result<DyadicInterval> {
    let terms = formula_terms(oracle, coeffs, stage)?;
    if terms.is_empty() {
        return Ok(DyadicInterval::zero());
    }
    let p = oracle.exponent().clone();
    nested(k, |prec| {
        let wp = prec * p.ceil() + 8;
        formula_value(oracle, &terms, stage, wp)?.clamp_nonneg().root(&p, prec)
    })
}

fn formula_value<O: PresentationOracle + ?Sized>(
    oracle: &O,
    terms: &[(NodePath, GaussianRational, bool)],
    stage: u64,
    prec: u32,
) -> Result<DyadicInterval> {
    let p = oracle.exponent();
    let wp = prec + 66 - (terms.len() as u64).leading_zeros();
    let mut acc = DyadicInterval::zero();
    for (node, sigma, leaf) in terms {
        let mass = if *leaf {
            oracle.node_norm_p(node, wp)?
        } else {
            oracle.residual_mass(node, stage, wp)?
        };
        let term = &abs_pow(sigma, p, wp) * &mass;
        acc = &acc + &term.round_out(wp + 2);
    }
    Ok(acc.round_out(prec + 2))
}
