use std::collections::{BTreeMap, BTreeSet};

use super::limit::{chain_limit, AtomApprox};
use super::partition::ChainPartition;
use crate::arith::{abs_pow, Dyadic, DyadicInterval, Exponent, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::tree::{rational_vector_norm, NodePath, PresentationOracle};
use crate::vectors::{ApproxVector, Vector};

/// A symbolic vector `sum_nu alpha_nu phi(nu) + sum_j beta_j g_j`, with `g_j`
/// the infimum of chain `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination {
    pub nodes: BTreeMap<NodePath, GaussianRational>,
    pub limits: BTreeMap<usize, GaussianRational>,
}

fn bump<K: Ord + Clone>(m: &mut BTreeMap<K, GaussianRational>, key: &K, a: &GaussianRational) {
    let v = m.get(key).map_or_else(|| a.clone(), |b| b + a);
    if v.is_zero() {
        m.remove(key);
    } else {
        m.insert(key.clone(), v);
    }
}

impl Combination {
    pub fn node(node: NodePath) -> Self {
        Self::from_nodes([(node, GaussianRational::one())].into())
    }

    pub fn from_nodes(nodes: BTreeMap<NodePath, GaussianRational>) -> Self {
        Combination {
            nodes: nodes.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
            limits: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nodes.is_empty() && self.limits.is_empty()
    }

    pub fn add(&self, o: &Combination) -> Combination {
        let mut out = self.clone();
        for (n, a) in &o.nodes {
            bump(&mut out.nodes, n, a);
        }
        for (j, a) in &o.limits {
            bump(&mut out.limits, j, a);
        }
        out
    }

    pub fn scale(&self, g: &GaussianRational) -> Combination {
        if g.is_zero() {
            return Combination::default();
        }
        Combination {
            nodes: self.nodes.iter().map(|(n, a)| (n.clone(), a * g)).collect(),
            limits: self.limits.iter().map(|(j, a)| (*j, a * g)).collect(),
        }
    }
}

/// `P x` for a symbolic `x`, with the materialized vector when labels exist and
/// an upper bound on `||vector - P_true x||_p^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub combination: Combination,
    pub vector: Option<ApproxVector>,
    pub error_p: Dyadic,
}

impl Projection {
    pub fn is_exact(&self) -> bool {
        self.error_p.is_zero()
    }
}

/// How chain `j` enters the projection.
#[derive(Clone, Debug, PartialEq)]
enum Role {
    /// `g_j != 0` and known exactly as a vector; `P g_j = 0`.
    ExactAtom(ApproxVector),
    /// `g_j = phi(top_j)` exactly (terminal chain) with no materialized label.
    TerminalAtom,
    /// `g_j` approximated by `phi(top_j)`; `||phi(top_j) - g_j||^p <= bound`.
    Candidate(Dyadic),
    /// `g_j` treated as `0`; `||g_j||^p <= bound` (zero when known to vanish).
    Vanishing(Dyadic),
}

/// The projection onto the nonatomic part realized from a chain partition:
/// `P phi(nu) = phi(nu) - sum_{j in U_nu} g_j`, linear in `phi`.
pub struct Projector<'a, O: PresentationOracle + ?Sized> {
    oracle: &'a O,
    partition: &'a ChainPartition,
    limits: Vec<AtomApprox>,
    roles: Vec<Role>,
    k: u32,
}

impl<'a, O: PresentationOracle + ?Sized> Projector<'a, O> {
    /// Chains with a known nonzero limit, a terminal top or a top norm
    /// `>= eps` are treated as atoms.
    pub fn new(oracle: &'a O, partition: &'a ChainPartition, eps: &Rational, k: u32) -> Result<Self> {
        let mut limits = Vec::with_capacity(partition.len());
        let mut roles = Vec::with_capacity(partition.len());
        for chain in &partition.chains {
            let a = chain_limit(oracle, partition, chain.id, k)?;
            let role = match (a.terminal, a.exact_limit()) {
                (_, Some(g)) if g.is_zero() => Role::Vanishing(Dyadic::zero()),
                (_, Some(g)) => Role::ExactAtom(g.clone()),
                (true, None) => Role::TerminalAtom,
                (false, None) if a.norm.lo().to_rational() >= *eps => Role::Candidate(a.residual_p.hi().clone()),
                (false, None) => Role::Vanishing(a.norm_p.hi().clone()),
            };
            limits.push(a);
            roles.push(role);
        }
        Ok(Projector {
            oracle,
            partition,
            limits,
            roles,
            k,
        })
    }

    pub fn oracle(&self) -> &'a O {
        self.oracle
    }

    pub fn partition(&self) -> &'a ChainPartition {
        self.partition
    }

    pub fn limits(&self) -> &[AtomApprox] {
        &self.limits
    }

    /// Ids of the chains treated as atoms.
    pub fn atom_chains(&self) -> Vec<usize> {
        (0..self.roles.len())
            .filter(|&j| !matches!(self.roles[j], Role::Vanishing(_)))
            .collect()
    }

    fn check_node(&self, node: &NodePath) -> Result<()> {
        if node.len() > self.partition.depth {
            return Err(Error::InsufficientDepth(format!(
                "node {node:?} lies below the partition depth {}",
                self.partition.depth
            )));
        }
        if self.partition.chain_of(node).is_none() {
            return Err(Error::NotInTree(node.clone()));
        }
        Ok(())
    }

    /// `P x`, exact at the symbolic level: `P(P x) = P x` as combinations.
    pub fn project(&self, x: &Combination) -> Result<Projection> {
        let p = self.oracle.exponent();
        let mut out = Combination::default();
        let mut beta: BTreeMap<usize, GaussianRational> = BTreeMap::new();
        for (node, a) in &x.nodes {
            self.check_node(node)?;
            bump(&mut out.nodes, node, a);
            for j in self.partition.chains_through(node) {
                bump(&mut beta, &j, a);
                match &self.roles[j] {
                    Role::ExactAtom(_) => bump(&mut out.limits, &j, &-a),
                    Role::TerminalAtom | Role::Candidate(_) => {
                        bump(&mut out.nodes, self.partition.chains[j].top(), &-a)
                    }
                    Role::Vanishing(_) => {}
                }
            }
        }
        for (j, b) in &x.limits {
            let role = self.roles.get(*j).ok_or(Error::NoSuchChain(*j))?;
            if let Role::Vanishing(_) = role {
                bump(&mut out.limits, j, b);
            }
        }

        let wp = self.k + 8;
        let mut error_p = Dyadic::zero();
        for (j, b) in &beta {
            let bound = match &self.roles[*j] {
                Role::Candidate(e) | Role::Vanishing(e) => e,
                _ => continue,
            };
            if !bound.is_zero() {
                error_p = &error_p + &(abs_pow(b, p, wp).hi() * bound);
            }
        }
        error_p = &error_p + &self.hidden_mass(&x.nodes, wp)?;

        let vector = self.materialize(&out);
        Ok(Projection {
            combination: out,
            vector,
            error_p: error_p.round_up(wp as i64),
        })
    }

    /// Upper bound on the p-mass of `x` sitting under children not yet
    /// enumerated at the partition's stage.
    fn hidden_mass(&self, nodes: &BTreeMap<NodePath, GaussianRational>, wp: u32) -> Result<Dyadic> {
        let p = self.oracle.exponent();
        let stage = self.partition.stage;
        let mut total = Dyadic::zero();
        for rho in self.partition.assignment.keys() {
            if rho.len() >= self.partition.depth
                || self.oracle.children(rho, stage).is_empty()
                || self.oracle.children_final(rho, stage)
            {
                continue;
            }
            let sigma = nodes
                .iter()
                .filter(|(n, _)| n.is_prefix_of(rho))
                .fold(GaussianRational::zero(), |acc, (_, a)| &acc + a);
            if sigma.is_zero() {
                continue;
            }
            let r = self.oracle.residual_mass(rho, stage, wp)?;
            if r.hi().is_negative() || r.hi().is_zero() {
                continue;
            }
            total = &total + &(abs_pow(&sigma, p, wp).hi() * r.hi());
        }
        Ok(total)
    }

    fn materialize(&self, c: &Combination) -> Option<ApproxVector> {
        let mut acc = Vector::zero(self.oracle.dim());
        for (node, a) in &c.nodes {
            acc = acc.add(&self.oracle.label(node)?.scale(a)).ok()?;
        }
        for (j, a) in &c.limits {
            let g = match &self.roles[*j] {
                Role::ExactAtom(g) => g.clone(),
                _ => Vector::zero(self.oracle.dim()),
            };
            acc = acc.add(&g.scale(a)).ok()?;
        }
        Some(acc)
    }

    /// `P phi(node)`.
    pub fn project_node(&self, node: &NodePath) -> Result<Projection> {
        self.project(&Combination::node(node.clone()))
    }

    /// `P (sum_nu alpha_nu phi(nu))`.
    pub fn project_vector(&self, coeffs: &BTreeMap<NodePath, GaussianRational>) -> Result<Projection> {
        self.project(&Combination::from_nodes(coeffs.clone()))
    }

    /// `||P x||_p`: exact norm of the materialized vector when available,
    /// otherwise from node masses (limits must then be absent).
    pub fn norm(&self, proj: &Projection, k: u32) -> Result<DyadicInterval> {
        let p: &Exponent = self.oracle.exponent();
        if let Some(v) = &proj.vector {
            return Ok(v.norm(p, k));
        }
        if proj.combination.limits.is_empty() {
            return rational_vector_norm(self.oracle, &proj.combination.nodes, self.partition.stage, k);
        }
        Err(Error::Unmaterializable("projection involves chain limits without labels".into()))
    }

    /// Nodes enumerated up to the partition depth.
    pub fn nodes(&self) -> BTreeSet<NodePath> {
        self.partition.assignment.keys().cloned().collect()
    }
}
