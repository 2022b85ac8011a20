#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use lpcat::arith::rational::{int, pow2, powi, ratio};
use lpcat::arith::{Exponent, GaussianRational, Rational};
use lpcat::tree::{ConcreteDisintegration, NodePath, PresentationOracle};
use lpcat::vectors::{ApproxVector, Dim, HybridVector, StepFunction, Vector};

pub fn exponent(s: &str) -> Exponent {
    Exponent::parse(s).unwrap()
}

pub fn random_gauss<R: Rng>(rng: &mut R, nonzero: bool) -> GaussianRational {
    loop {
        let re = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7));
        let im = if rng.gen_bool(0.3) {
            ratio(rng.gen_range(-5..=5), rng.gen_range(1..=5))
        } else {
            Rational::zero()
        };
        let g = GaussianRational::new(re, im);
        if !nonzero || !g.is_zero() {
            return g;
        }
    }
}

/// Random ordered breakpoints `0 = x_0 < ... < x_m = 1`.
pub fn random_breaks<R: Rng>(rng: &mut R, m: usize) -> Vec<Rational> {
    let mut xs: BTreeSet<Rational> = BTreeSet::new();
    while xs.len() < m.saturating_sub(1) {
        let d = rng.gen_range(2..=13);
        let n = rng.gen_range(1..d);
        xs.insert(ratio(n, d));
    }
    let mut out = vec![Rational::zero()];
    out.extend(xs);
    out.push(Rational::one());
    out
}

pub fn random_hybrid<R: Rng>(rng: &mut R) -> HybridVector {
    let n = 4;
    let mut atoms = BTreeMap::new();
    for i in 0..n {
        if rng.gen_bool(0.5) {
            atoms.insert(i, random_gauss(rng, true));
        }
    }
    let m = rng.gen_range(1..=6);
    let xs = random_breaks(rng, m);
    let pieces = xs
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone(), random_gauss(rng, false)))
        .collect();
    Vector::new(atoms, StepFunction::from_pieces(pieces).unwrap(), Dim::Finite(n)).unwrap()
}

/// A random fully materialized disintegration: the root label is split into
/// disjoint cells which are distributed among up to `branching` children.
pub fn random_disintegration<R: Rng>(rng: &mut R, max_depth: usize, branching: usize) -> ConcreteDisintegration {
    let dim = Dim::Finite(3);
    let mut cells: Vec<ApproxVector> = Vec::new();
    for i in 0..3 {
        if rng.gen_bool(0.5) {
            cells.push(ApproxVector::atom(i, random_gauss(rng, true).into(), dim).unwrap());
        }
    }
    let m = rng.gen_range(1..=4);
    let xs = random_breaks(rng, m);
    for w in xs.windows(2) {
        let c = random_gauss(rng, true);
        cells.push(ApproxVector::indicator(&w[0], &w[1], c.into(), dim).unwrap());
    }
    let mut labels = BTreeMap::new();
    grow(rng, NodePath::root(), cells, max_depth, branching, &mut labels);
    ConcreteDisintegration::new(labels, BTreeSet::new()).unwrap()
}

fn split_cell(c: &ApproxVector) -> Option<(ApproxVector, ApproxVector)> {
    if !c.atoms().is_empty() {
        return None;
    }
    let (a, b, v) = c.steps().pieces().find(|(_, _, v)| !v.is_zero())?;
    let m = (a + b) / int(2);
    let dim = c.dim();
    Some((
        ApproxVector::indicator(a, &m, v.clone(), dim).ok()?,
        ApproxVector::indicator(&m, b, v.clone(), dim).ok()?,
    ))
}

fn grow<R: Rng>(
    rng: &mut R,
    node: NodePath,
    mut cells: Vec<ApproxVector>,
    depth_left: usize,
    branching: usize,
    labels: &mut BTreeMap<NodePath, ApproxVector>,
) {
    let label = cells
        .iter()
        .fold(ApproxVector::zero(Dim::Finite(3)), |acc, c| acc.add(c).unwrap());
    labels.insert(node.clone(), label);
    if depth_left == 0 || !rng.gen_bool(0.8) {
        return;
    }
    if cells.len() == 1 {
        match split_cell(&cells[0]) {
            Some((l, r)) => cells = vec![l, r],
            None => return,
        }
    }
    let k = rng.gen_range(2..=branching.min(cells.len()).max(2));
    let mut cuts: BTreeSet<usize> = BTreeSet::new();
    while cuts.len() < k - 1 {
        cuts.insert(rng.gen_range(1..cells.len()));
    }
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(cells.len());
    for (i, w) in bounds.windows(2).enumerate() {
        grow(
            rng,
            node.child(i as u64),
            cells[w[0]..w[1]].to_vec(),
            depth_left - 1,
            branching,
            labels,
        );
    }
}

/// Random coefficients on a few nodes of the tree.
pub fn random_coeffs<R: Rng>(rng: &mut R, nodes: &[NodePath]) -> BTreeMap<NodePath, GaussianRational> {
    let mut out = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=4) {
        let n = nodes[rng.gen_range(0..nodes.len())].clone();
        out.insert(n, random_gauss(rng, true));
    }
    out
}

/// Bisection enclosure of `x^(a/b)` for `x >= 0`, width `< 2^-bits`.
pub fn bisect_pow(x: &Rational, a: u32, b: u32, bits: u32) -> (Rational, Rational) {
    let target = powi(x, a as i64);
    let mut lo = Rational::zero();
    let mut hi = powi(&x.clone().max(Rational::one()), a as i64) + Rational::one();
    let eps = pow2(-(bits as i64));
    while &hi - &lo >= eps {
        let mid = (&lo + &hi) / int(2);
        // keep the grid dyadic so that denominators stay small
        let mid = dyadic_floor(&mid, bits + 2);
        if powi(&mid, b as i64) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn dyadic_floor(r: &Rational, bits: u32) -> Rational {
    let s: BigInt = BigInt::one() << bits;
    Rational::new((r * Rational::from_integer(s.clone())).floor().to_integer(), s)
}

fn exponent_parts(p: &Exponent) -> (u32, u32) {
    let v = p.value();
    (
        v.numer().try_into().unwrap(),
        v.denom().try_into().unwrap(),
    )
}

/// Independent enclosure of `||v||_p` by rational bisection.
pub fn reference_norm(v: &HybridVector, p: &Exponent, bits: u32) -> (Rational, Rational) {
    let (a, b) = exponent_parts(p);
    let mut s_lo = Rational::zero();
    let mut s_hi = Rational::zero();
    let mut add = |c: &GaussianRational, w: Rational| {
        let (l, h) = bisect_pow(&c.abs_sq(), a, 2 * b, bits + 8);
        s_lo += &l * &w;
        s_hi += &h * &w;
    };
    for c in v.atoms().values() {
        add(c, Rational::one());
    }
    for (x, y, c) in v.steps().pieces() {
        if !c.is_zero() {
            add(c, y - x);
        }
    }
    let lo = bisect_pow(&s_lo, b, a, bits).0;
    let hi = bisect_pow(&s_hi, b, a, bits).1;
    (lo, hi)
}

/// All nodes enumerated by `stage` down to `depth`, breadth first.
pub fn enumerate<O: PresentationOracle + ?Sized>(o: &O, depth: usize, stage: u64) -> Vec<NodePath> {
    let mut out = Vec::new();
    let mut queue = VecDeque::from([NodePath::root()]);
    while let Some(n) = queue.pop_front() {
        if n.len() < depth {
            queue.extend(o.children(&n, stage));
        }
        out.push(n);
    }
    out
}
