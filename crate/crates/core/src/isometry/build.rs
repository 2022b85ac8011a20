use std::collections::BTreeMap;

use num_traits::Zero;

use super::map::{scale_surd, AtomImage, PartialIsometry, Transport};
use crate::arith::{GaussianRational, Rational, Surd};
use crate::chains::{AtomApprox, ChainPartition, Projector};
use crate::error::{Error, Result};
use crate::tree::PresentationOracle;

/// `T_1`: `e_i` goes to the normalized limit of the `i`-th atom, atoms taken in
/// chain-id order. With `expected = Some(n)` exactly `n` atoms are required.
pub fn build_t1<O: PresentationOracle + ?Sized>(
    oracle: &O,
    partition: &ChainPartition,
    atoms: &[AtomApprox],
    expected: Option<usize>,
    k: u32,
) -> Result<PartialIsometry> {
    let p = oracle.exponent().clone();
    if let Some(n) = expected {
        if atoms.len() != n {
            return Err(Error::AtomCount {
                expected: n,
                found: atoms.len(),
            });
        }
    }
    let mut sorted: Vec<&AtomApprox> = atoms.iter().collect();
    sorted.sort_by_key(|a| a.chain_id);
    let mut images = Vec::with_capacity(sorted.len());
    let mut mass_error = Rational::zero();
    for a in sorted {
        let g = a
            .exact_limit()
            .or(a.vector.as_ref())
            .ok_or_else(|| Error::Unmaterializable(format!("limit of chain {}", a.chain_id)))?;
        let mass = match g.mass_exact(&p) {
            Some(m) => m,
            None => {
                let e = g.mass_enclosure(&p, k + 8);
                let m = e.midpoint().to_rational();
                let slack = (e.hi().to_rational() - e.lo().to_rational()) / &m;
                mass_error = mass_error.max(slack);
                m
            }
        };
        if mass.is_zero() {
            return Err(Error::Invalid(format!("chain {} has a vanishing limit", a.chain_id)));
        }
        if !a.is_exact() {
            mass_error = mass_error.max(a.residual_p.hi().to_rational() / &mass);
        }
        let s = Surd::radical(GaussianRational::one(), &mass, &-p.recip())?;
        images.push(AtomImage {
            chain_id: a.chain_id,
            node: a.node.clone(),
            image: scale_surd(g, &s),
        });
    }
    for (i, u) in images.iter().enumerate() {
        for v in &images[i + 1..] {
            if !u.image.support_disjoint(&v.image) {
                return Err(Error::Invalid(format!(
                    "atoms of chains {} and {} overlap",
                    u.chain_id, v.chain_id
                )));
            }
        }
    }
    let mut t = PartialIsometry {
        p,
        dim: oracle.dim(),
        depth: partition.depth,
        k,
        atoms: images,
        transport: None,
        level: 0,
        images: BTreeMap::new(),
        mass_error,
    };
    t.list_images()?;
    Ok(t)
}

/// `T_2`: mass transport of `L^p[0,1]` onto the projected cells at `depth`
/// (nodes at that depth and terminal nodes above it), in tree order. Dyadic
/// generators of `level` are listed in the result.
pub fn build_t2<O: PresentationOracle + ?Sized>(
    projector: &Projector<'_, O>,
    depth: usize,
    level: u32,
    k: u32,
) -> Result<PartialIsometry> {
    let oracle = projector.oracle();
    let partition = projector.partition();
    if depth > partition.depth {
        return Err(Error::InsufficientDepth(format!(
            "cells at depth {depth} need a partition of depth >= {depth}, have {}",
            partition.depth
        )));
    }
    let p = oracle.exponent().clone();
    let mut cells = Vec::new();
    let mut error_p = Rational::zero();
    for node in projector.nodes() {
        let leaf = node.len() == depth || (node.len() < depth && oracle.children(&node, partition.stage).is_empty());
        if !leaf {
            continue;
        }
        let proj = projector.project_node(&node)?;
        let v = proj
            .vector
            .ok_or_else(|| Error::Unmaterializable(format!("projection of {node}")))?;
        error_p += proj.error_p.to_rational();
        if !v.is_zero() {
            cells.push((node, v));
        }
    }
    let (transport, slack) = Transport::new(&cells, &p, k + 8)?;
    let mass_error = slack + error_p / &transport.total;
    let mut t = PartialIsometry {
        p,
        dim: oracle.dim(),
        depth,
        k,
        atoms: Vec::new(),
        transport: Some(transport),
        level,
        images: BTreeMap::new(),
        mass_error,
    };
    t.list_images()?;
    Ok(t)
}

/// `T(v, f) = T_1(v) + T_2(f)`.
pub fn glue(t1: &PartialIsometry, t2: &PartialIsometry) -> Result<PartialIsometry> {
    if t1.p != t2.p {
        return Err(Error::Invalid(format!("exponents differ: {} vs {}", t1.p, t2.p)));
    }
    if t1.dim != t2.dim {
        return Err(Error::DimensionMismatch(t1.dim.to_string(), t2.dim.to_string()));
    }
    if let Some(g) = t2.images.keys().find(|g| t1.images.contains_key(g)) {
        return Err(Error::GeneratorCollision(g.to_string()));
    }
    if !t2.atoms.is_empty() {
        return Err(Error::GeneratorCollision("e0".into()));
    }
    if t1.transport.is_some() {
        return Err(Error::GeneratorCollision("continuous part".into()));
    }
    let mut images = t1.images.clone();
    images.extend(t2.images.iter().map(|(g, v)| (*g, v.clone())));
    Ok(PartialIsometry {
        p: t1.p.clone(),
        dim: t1.dim,
        depth: t1.depth.max(t2.depth),
        k: t1.k.min(t2.k),
        atoms: t1.atoms.clone(),
        transport: t2.transport.clone(),
        level: t2.level,
        images,
        mass_error: t1.mass_error.clone().max(t2.mass_error.clone()),
    })
}
