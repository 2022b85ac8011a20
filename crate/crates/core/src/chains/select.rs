use serde::{Deserialize, Serialize};

use crate::arith::{Dyadic, DyadicInterval};
use crate::error::{Error, Result};
use crate::tree::{NodePath, PresentationOracle};

/// Evidence that `chosen` is an almost norm-maximizing child of `node`: every
/// sibling has p-mass at most `chosen`'s plus `2^-tolerance_exp`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub node: NodePath,
    pub chosen: NodePath,
    pub chosen_mass: DyadicInterval,
    /// Hull of the p-masses of the other examined siblings.
    pub sibling_bound: Option<DyadicInterval>,
    /// `||phi(node)||^p` minus the examined children: bounds every other sibling.
    pub residual: DyadicInterval,
    pub tolerance: String,
    pub tolerance_exp: u32,
    pub examined: usize,
    pub enumerated: usize,
}

fn bits(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

/// Picks a child `nu'` of `node` with `||phi(nu'')||^p <= ||phi(nu')||^p + 2^-|nu'|`
/// for every sibling `nu''`, enumerated or not.
///
/// Children are examined in enumeration order until the unexamined p-mass drops
/// below `2^-(l+2)` (at least one is examined); among the examined ones, masses at precision `2^-(l+3)`
/// decide, and the smallest index whose upper bound reaches the largest lower
/// bound wins.
pub fn select_anm_child<O: PresentationOracle + ?Sized>(
    oracle: &O,
    node: &NodePath,
    stage: u64,
) -> Result<(NodePath, Certificate)> {
    let kids = oracle.children(node, stage);
    if kids.is_empty() {
        return Err(match oracle.is_terminal(node) {
            Some(true) => Error::TerminalNode(node.clone()),
            _ => Error::InsufficientStage {
                node: node.clone(),
                residual: "no children enumerated".into(),
                threshold_exp: node.len() as u32 + 3,
            },
        });
    }
    let l = node.len() as u32 + 1;
    let threshold = Dyadic::pow2(-(l as i64 + 2));
    let wp = l + 4 + bits(kids.len());
    let mut residual = oracle.node_norm_p(node, wp)?;
    let mut examined = 0;
    while examined < kids.len() && (examined == 0 || residual.hi() >= &threshold) {
        residual = &residual - &oracle.node_norm_p(&kids[examined], wp)?;
        examined += 1;
    }
    if residual.hi() >= &threshold {
        return Err(Error::InsufficientStage {
            node: node.clone(),
            residual: residual.to_string(),
            threshold_exp: l + 2,
        });
    }
    let masses = kids[..examined]
        .iter()
        .map(|c| oracle.node_norm_p(c, l + 3))
        .collect::<Result<Vec<_>>>()?;
    let max_lo = masses.iter().map(|m| m.lo().clone()).max().expect("at least one child examined");
    let idx = masses.iter().position(|m| m.hi() >= &max_lo).expect("the maximizer qualifies");
    let sibling_bound = masses
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, m)| m.clone())
        .reduce(|a, b| a.hull(&b));
    let cert = Certificate {
        node: node.clone(),
        chosen: kids[idx].clone(),
        chosen_mass: masses[idx].clone(),
        sibling_bound,
        residual,
        tolerance: format!("2^-{l}"),
        tolerance_exp: l,
        examined,
        enumerated: kids.len(),
    };
    Ok((kids[idx].clone(), cert))
}

/// Re-checks a certificate at precision `2^-k` against every sibling
/// enumerated by `stage` (`mass(sibling).hi <= mass(chosen).lo + 2^-l`) and
/// against the unexamined mass, which bounds every other sibling.
pub fn verify_certificate<O: PresentationOracle + ?Sized>(
    oracle: &O,
    cert: &Certificate,
    stage: u64,
    k: u32,
) -> Result<bool> {
    let tol = Dyadic::pow2(-(cert.tolerance_exp as i64));
    let chosen = oracle.node_norm_p(&cert.chosen, k)?;
    let bound = chosen.lo() + &tol;
    for s in oracle.children(&cert.node, stage) {
        if oracle.node_norm_p(&s, k)?.hi() > &bound {
            return Ok(false);
        }
    }
    let kids = oracle.children(&cert.node, stage);
    let mut rest = oracle.node_norm_p(&cert.node, k + bits(kids.len()) + 1)?;
    for c in kids.iter().take(cert.examined) {
        rest = &rest - &oracle.node_norm_p(c, k + bits(kids.len()) + 1)?;
    }
    Ok(rest.hi() <= &bound)
}
