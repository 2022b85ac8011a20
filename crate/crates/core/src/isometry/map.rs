use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::generator::Generator;
use crate::arith::rational::{format_rational, parse_rational};
use crate::arith::{Exponent, GaussianRational, Rational, Surd};
use crate::error::{Error, Result};
use crate::tree::NodePath;
use crate::vectors::{ApproxVector, Dim, DimJson, HybridVector, StepFunction, Vector, VectorJson};

/// A constant piece `value` on `[from, to)` of a projected cell, occupying the
/// p-mass window `[offset, offset + density (to - from))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportPiece {
    pub node: NodePath,
    pub from: Rational,
    pub to: Rational,
    pub value: Surd,
    /// `|value|^p`, exact or a rational approximation.
    pub density: Rational,
    pub offset: Rational,
}

impl TransportPiece {
    fn mass(&self) -> Rational {
        &self.density * (&self.to - &self.from)
    }
}

/// Mass transport from `L^p[0,1]` onto the span of projected cells: the
/// relative mass range `[a, b)` goes to the part of the cells lying in the
/// corresponding window of cumulative p-mass, scaled by `total^{-1/p}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    pub pieces: Vec<TransportPiece>,
    pub total: Rational,
    pub scale: Surd,
}

impl Transport {
    /// Cells are consumed in the given order; pieces with zero density are skipped.
    pub fn new(cells: &[(NodePath, ApproxVector)], p: &Exponent, prec: u32) -> Result<(Transport, Rational)> {
        let mut pieces = Vec::new();
        let mut offset = Rational::zero();
        let mut slack = Rational::zero();
        for (node, v) in cells {
            if !v.atoms().is_empty() {
                return Err(Error::Invalid(format!("projected cell {node} carries atoms")));
            }
            for (a, b, c) in v.steps().pieces() {
                if c.is_zero() {
                    continue;
                }
                let density = match c.abs_pow_exact(p) {
                    Some(d) => d,
                    None => {
                        let e = c.abs_pow(p, prec);
                        slack += (e.hi().to_rational() - e.lo().to_rational()) * (b - a);
                        e.midpoint().to_rational()
                    }
                };
                let piece = TransportPiece {
                    node: node.clone(),
                    from: a.clone(),
                    to: b.clone(),
                    value: c.clone(),
                    density,
                    offset: offset.clone(),
                };
                offset += piece.mass();
                pieces.push(piece);
            }
        }
        if offset.is_zero() {
            return Err(Error::Invalid("the projected cells carry no mass".into()));
        }
        let scale = Surd::radical(GaussianRational::one(), &offset, &-p.recip())?;
        let rel = &slack / &offset;
        Ok((
            Transport {
                pieces,
                total: offset,
                scale,
            },
            rel,
        ))
    }

    /// The image of the indicator of `[a, b)`.
    pub fn image(&self, a: &Rational, b: &Rational, dim: Dim) -> Result<ApproxVector> {
        let m0 = a * &self.total;
        let m1 = b * &self.total;
        let mut out = Vec::new();
        for pc in &self.pieces {
            let lo = pc.offset.clone().max(m0.clone());
            let hi = (&pc.offset + pc.mass()).min(m1.clone());
            if lo >= hi {
                continue;
            }
            let x0 = &pc.from + (&lo - &pc.offset) / &pc.density;
            let x1 = &pc.from + (&hi - &pc.offset) / &pc.density;
            out.push((x0, x1, pc.value.mul(&self.scale)));
        }
        out.sort_by(|u, v| u.0.cmp(&v.0));
        Ok(Vector::continuous(StepFunction::from_pieces(out)?, dim))
    }

    /// Largest share of the total mass held by a single cell.
    pub fn granularity(&self) -> Rational {
        let mut per_cell: BTreeMap<&NodePath, Rational> = BTreeMap::new();
        for pc in &self.pieces {
            *per_cell.entry(&pc.node).or_insert_with(Rational::zero) += pc.mass();
        }
        per_cell.into_values().max().unwrap_or_else(Rational::zero) / &self.total
    }
}

/// The image of `e_i` under the atomic part of the map.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomImage {
    pub chain_id: usize,
    pub node: NodePath,
    pub image: ApproxVector,
}

/// A finite-depth linear map from the standard presentation into a target
/// presentation, given on generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "IsometryJson", try_from = "IsometryJson")]
pub struct PartialIsometry {
    pub p: Exponent,
    /// Dimension of the target's atomic part.
    pub dim: Dim,
    pub depth: usize,
    pub k: u32,
    /// `atoms[i]` is the image of `e_i`.
    pub atoms: Vec<AtomImage>,
    pub transport: Option<Transport>,
    /// Level of the dyadic generators listed in `images`.
    pub level: u32,
    pub images: BTreeMap<Generator, ApproxVector>,
    /// Reported bound on the relative p-mass error of generator images.
    pub mass_error: Rational,
}

impl PartialIsometry {
    /// Atomic dimension of the source.
    pub fn source_atoms(&self) -> u64 {
        self.atoms.len() as u64
    }

    pub fn source_dim(&self) -> Dim {
        Dim::Finite(self.source_atoms())
    }

    /// `T v` for a rational vector of the standard presentation.
    pub fn apply(&self, v: &HybridVector) -> Result<ApproxVector> {
        let mut acc = Vector::zero(self.dim);
        for (i, c) in v.atoms() {
            let img = self
                .atoms
                .get(*i as usize)
                .ok_or_else(|| Error::UnknownGenerator(Generator::Atom(*i).to_string()))?;
            acc = acc.add(&img.image.scale(c))?;
        }
        if v.steps().is_zero() {
            return Ok(acc);
        }
        let t = self
            .transport
            .as_ref()
            .ok_or_else(|| Error::UnknownGenerator("continuous part".into()))?;
        for (a, b, c) in v.steps().pieces() {
            if !c.is_zero() {
                acc = acc.add(&t.image(a, b, self.dim)?.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// True when every generator is sent to itself.
    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|(g, img)| {
            g.vector(self.dim)
                .map(|v| v.to_approx() == *img)
                .unwrap_or(false)
        })
    }

    pub(crate) fn list_images(&mut self) -> Result<()> {
        let mut images = BTreeMap::new();
        for (i, a) in self.atoms.iter().enumerate() {
            images.insert(Generator::Atom(i as u64), a.image.clone());
        }
        if let Some(t) = &self.transport {
            for g in Generator::standard(0, self.level) {
                let (a, b) = g.interval().expect("dyadic generator");
                images.insert(g, t.image(&a, &b, self.dim)?);
            }
        }
        self.images = images;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceJson {
    pub node: NodePath,
    pub from: String,
    pub to: String,
    pub value: String,
    pub density: String,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportJson {
    pub pieces: Vec<PieceJson>,
    pub total: String,
    pub scale: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomImageJson {
    pub chain_id: usize,
    pub node: NodePath,
    pub image: VectorJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryJson {
    pub p: String,
    pub dim: DimJson,
    pub depth: usize,
    pub k: u32,
    pub level: u32,
    pub mass_error: String,
    pub atoms: Vec<AtomImageJson>,
    pub transport: Option<TransportJson>,
    pub images: BTreeMap<Generator, VectorJson>,
}

impl From<PartialIsometry> for IsometryJson {
    fn from(t: PartialIsometry) -> Self {
        IsometryJson {
            p: format_rational(t.p.value()),
            dim: t.dim.into(),
            depth: t.depth,
            k: t.k,
            level: t.level,
            mass_error: format_rational(&t.mass_error),
            atoms: t
                .atoms
                .iter()
                .map(|a| AtomImageJson {
                    chain_id: a.chain_id,
                    node: a.node.clone(),
                    image: a.image.to_json(),
                })
                .collect(),
            transport: t.transport.as_ref().map(|tr| TransportJson {
                pieces: tr
                    .pieces
                    .iter()
                    .map(|pc| PieceJson {
                        node: pc.node.clone(),
                        from: format_rational(&pc.from),
                        to: format_rational(&pc.to),
                        value: pc.value.to_string(),
                        density: format_rational(&pc.density),
                        offset: format_rational(&pc.offset),
                    })
                    .collect(),
                total: format_rational(&tr.total),
                scale: tr.scale.to_string(),
            }),
            images: t.images.iter().map(|(g, v)| (*g, v.to_json())).collect(),
        }
    }
}

impl TryFrom<IsometryJson> for PartialIsometry {
    type Error = Error;

    fn try_from(j: IsometryJson) -> Result<Self> {
        let p = Exponent::parse(&j.p)?;
        let dim = j.dim.into();
        let atoms = j
            .atoms
            .iter()
            .map(|a| {
                Ok(AtomImage {
                    chain_id: a.chain_id,
                    node: a.node.clone(),
                    image: Vector::from_json(&a.image)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let transport = match &j.transport {
            None => None,
            Some(tr) => Some(Transport {
                pieces: tr
                    .pieces
                    .iter()
                    .map(|pc| {
                        Ok(TransportPiece {
                            node: pc.node.clone(),
                            from: parse_rational(&pc.from)?,
                            to: parse_rational(&pc.to)?,
                            value: Surd::parse(&pc.value)?,
                            density: parse_rational(&pc.density)?,
                            offset: parse_rational(&pc.offset)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                total: parse_rational(&tr.total)?,
                scale: Surd::parse(&tr.scale)?,
            }),
        };
        let images = j
            .images
            .iter()
            .map(|(g, v)| Ok((*g, Vector::from_json(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(PartialIsometry {
            p,
            dim,
            depth: j.depth,
            k: j.k,
            atoms,
            transport,
            level: j.level,
            images,
            mass_error: parse_rational(&j.mass_error)?,
        })
    }
}

/// Scales a vector by a radical coefficient.
pub(crate) fn scale_surd(v: &ApproxVector, s: &Surd) -> ApproxVector {
    v.map(|c| c.mul(s))
}

pub(crate) fn generator_mass(g: &Generator) -> Rational {
    match g.interval() {
        None => Rational::from_integer(1.into()),
        Some((a, b)) => b - a,
    }
}
