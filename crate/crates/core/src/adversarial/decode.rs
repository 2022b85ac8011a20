use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{int, powi, ratio};
use crate::arith::{nested, DyadicInterval, Exponent};
use crate::chains::Projector;
use crate::error::{Error, Result};
use crate::tree::{NodePath, PresentationOracle};
use crate::vectors::ApproxVector;

/// Answers `P(phi(nu))` and `||P(phi(nu))||_p` for a fixed projection `P`.
pub trait ProjectionOracle {
    fn exponent(&self) -> &Exponent;

    fn projected_label(&self, node: &NodePath) -> Result<ApproxVector>;

    /// Width `< 2^-k`, nested in `k`.
    fn projected_norm(&self, node: &NodePath, k: u32) -> Result<DyadicInterval> {
        Ok(self.projected_label(node)?.norm(self.exponent(), k))
    }
}

/// Which ground-truth projection to apply to labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionKind {
    /// Onto `{0} (+) L^p[0,1]`: the nonatomic summands.
    Continuous,
    /// Onto `l^p (+) {0}`.
    Atomic,
    /// Onto `<e_i> (+) {0}`.
    Axis(u64),
}

/// A projection computed from ground-truth labels.
pub struct GroundTruthProjection<'a, O: PresentationOracle + ?Sized> {
    oracle: &'a O,
    kind: ProjectionKind,
}

impl<'a, O: PresentationOracle + ?Sized> GroundTruthProjection<'a, O> {
    pub fn new(oracle: &'a O, kind: ProjectionKind) -> Self {
        GroundTruthProjection { oracle, kind }
    }
}

impl<O: PresentationOracle + ?Sized> ProjectionOracle for GroundTruthProjection<'_, O> {
    fn exponent(&self) -> &Exponent {
        self.oracle.exponent()
    }

    fn projected_label(&self, node: &NodePath) -> Result<ApproxVector> {
        let v = self
            .oracle
            .label(node)
            .ok_or_else(|| Error::Unmaterializable(format!("no ground-truth label for {node:?}")))?;
        Ok(match self.kind {
            ProjectionKind::Continuous => v.continuous_part(),
            ProjectionKind::Atomic => v.atomic_part(),
            ProjectionKind::Axis(i) => match v.atoms().get(&i) {
                Some(c) => ApproxVector::atom(i, c.clone(), v.dim())?,
                None => ApproxVector::zero(v.dim()),
            },
        })
    }
}

/// The nonatomic projection realized from chains, as a [`ProjectionOracle`].
impl<O: PresentationOracle + ?Sized> ProjectionOracle for Projector<'_, O> {
    fn exponent(&self) -> &Exponent {
        self.oracle().exponent()
    }

    fn projected_label(&self, node: &NodePath) -> Result<ApproxVector> {
        self.project_node(node)?
            .vector
            .ok_or_else(|| Error::Unmaterializable(format!("no label for {node:?}")))
    }

    fn projected_norm(&self, node: &NodePath, k: u32) -> Result<DyadicInterval> {
        let proj = self.project_node(node)?;
        self.norm(&proj, k)
    }
}

/// `I - P` for a projection `P` over an oracle with labels.
pub struct Complement<'a, O: PresentationOracle + ?Sized, P: ProjectionOracle + ?Sized> {
    oracle: &'a O,
    inner: &'a P,
}

impl<'a, O: PresentationOracle + ?Sized, P: ProjectionOracle + ?Sized> Complement<'a, O, P> {
    pub fn new(oracle: &'a O, inner: &'a P) -> Self {
        Complement { oracle, inner }
    }
}

impl<O: PresentationOracle + ?Sized, P: ProjectionOracle + ?Sized> ProjectionOracle for Complement<'_, O, P> {
    fn exponent(&self) -> &Exponent {
        self.oracle.exponent()
    }

    fn projected_label(&self, node: &NodePath) -> Result<ApproxVector> {
        let v = self
            .oracle
            .label(node)
            .ok_or_else(|| Error::Unmaterializable(format!("no label for {node:?}")))?;
        v.sub(&self.inner.projected_label(node)?)
    }
}

/// `gamma = 1 - ||P phi((0))||_p^p` for the projection onto `<e_0> (+) {0}` of
/// the finite-atomic presentation. Width `< 2^-k`, nested in `k`.
pub fn decode_gamma<P: ProjectionOracle + ?Sized>(po: &P, k: u32) -> Result<DyadicInterval> {
    let p = po.exponent().clone();
    let node = NodePath::from([0]);
    nested(k, |prec| {
        let a = po.projected_norm(&node, prec + p.ceil() + 4)?.clamp_nonneg();
        let ap = a.pow_rat(p.value(), prec + 4)?;
        Ok((&DyadicInterval::one() - &ap).round_out(prec + 2))
    })
}

/// Reads `W ∩ [0, m]` off an enclosure of `gamma = 1/4 + sum_{x in W} 2 3^-(x+3)`.
///
/// Needs width `< 3^-(m+4)`; then exactly one integer `N` in the scaled
/// enclosure has all `m + 3` base-3 digits in `{0, 2}`, and bit `x` is digit `x + 3`.
pub fn decode_membership(gamma: &DyadicInterval, m: u64) -> Result<Vec<bool>> {
    let digits = m + 3;
    let scale = powi(&int(3), digits as i64);
    if gamma.width().to_rational() >= powi(&int(3), -(digits as i64 + 1)) {
        return Err(Error::InsufficientPrecision(format!(
            "gamma enclosure {gamma} is too wide to decide {} digits",
            m + 1
        )));
    }
    let lo = ((gamma.lo().to_rational() - ratio(1, 4)) * &scale).floor().to_integer();
    let hi = ((gamma.hi().to_rational() - ratio(1, 4)) * &scale).floor().to_integer();
    let limit = scale.to_integer();
    let mut found: Vec<Vec<u8>> = Vec::new();
    let mut n = lo;
    while n <= hi {
        if !n.is_negative() && n < limit {
            let ds = base3_digits(&n, digits);
            if ds.iter().all(|&d| d != 1) && ds[0] == 0 && ds[1] == 0 {
                found.push(ds);
            }
        }
        n += BigInt::one();
    }
    match found.as_slice() {
        [ds] => Ok(ds[2..].iter().map(|&d| d == 2).collect()),
        _ => Err(Error::InsufficientPrecision(format!(
            "gamma enclosure {gamma} is not consistent with a unique {{0,2}}-digit expansion"
        ))),
    }
}

/// The `len` most significant base-3 digits of `n / 3^len`.
fn base3_digits(n: &BigInt, len: u64) -> Vec<u8> {
    let mut ds = vec![0u8; len as usize];
    let mut x = n.clone();
    let three = BigInt::from(3);
    for i in (0..len as usize).rev() {
        let (q, r) = x.div_mod_floor(&three);
        ds[i] = r.to_u8().expect("digit below 3");
        x = q;
    }
    debug_assert!(x.is_zero());
    ds
}

/// Outcome of [`decode_fin`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinDecision {
    pub e: u64,
    pub in_fin: bool,
    /// `q` with `|q - ||P phi((e))||| < 2^-(e+3)`.
    pub q: String,
    pub norm: DyadicInterval,
    pub threshold: String,
}

/// `e in Fin` iff `|q| < 2^-(e+2)` for `q` within `2^-(e+3)` of `||P_V phi((e))||_p`.
pub fn decode_fin<P: ProjectionOracle + ?Sized>(po: &P, e: u64) -> Result<FinDecision> {
    let norm = po.projected_norm(&NodePath::from([e]), e as u32 + 4)?;
    let q = norm.midpoint();
    let threshold = crate::arith::Dyadic::pow2(-(e as i64 + 2));
    Ok(FinDecision {
        e,
        in_fin: q.abs() < threshold,
        q: q.to_string(),
        norm,
        threshold: threshold.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    #[test]
    fn membership_from_exact_gamma() {
        // W = {0, 3}
        let gamma = ratio(1, 4) + ratio(2, 27) + ratio(2, 729);
        let enc = DyadicInterval::from_rational(&gamma, 40);
        assert_eq!(decode_membership(&enc, 3).unwrap(), vec![true, false, false, true]);
        assert_eq!(decode_membership(&enc, 8).unwrap()[4..], [false; 5]);
        let wide = DyadicInterval::from_rational(&gamma, 4);
        assert!(decode_membership(&wide, 3).is_err());
    }

    #[test]
    fn digits() {
        assert_eq!(base3_digits(&BigInt::from(20), 4), vec![0, 2, 0, 2]);
    }
}
