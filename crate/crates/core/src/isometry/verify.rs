use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::generator::Generator;
use super::map::PartialIsometry;
use crate::arith::rational::ratio;
use crate::arith::{Dyadic, DyadicInterval, GaussianRational, Rational};
use crate::error::Result;
use crate::vectors::{Dim, HybridVector, StepFunction, Vector};

fn random_coeff<R: Rng>(rng: &mut R) -> GaussianRational {
    let re = ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4));
    let im = if rng.gen_bool(0.25) {
        ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4))
    } else {
        Rational::from_integer(0.into())
    };
    GaussianRational::new(re, im)
}

/// A random rational vector of the standard presentation with `atoms` atomic
/// coordinates and a step function constant on dyadic cells of `level`.
pub fn random_standard_vector<R: Rng>(rng: &mut R, atoms: u64, level: u32) -> HybridVector {
    let mut coords = BTreeMap::new();
    for i in 0..atoms {
        if rng.gen_bool(0.6) {
            coords.insert(i, random_coeff(rng));
        }
    }
    let cells = 1i64 << rng.gen_range(0..=level);
    let mut pieces = Vec::new();
    for i in 0..cells {
        if rng.gen_bool(0.7) {
            pieces.push((ratio(i, cells), ratio(i + 1, cells), random_coeff(rng)));
        }
    }
    let steps = StepFunction::from_pieces(pieces).expect("cells are ordered");
    Vector::new(coords, steps, Dim::Finite(atoms)).expect("indices lie below the dimension")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleCheck {
    pub index: usize,
    pub norm: DyadicInterval,
    pub image_norm: DyadicInterval,
    pub discrepancy: Dyadic,
    pub tolerance: Dyadic,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub generator: Generator,
    pub norm_p: DyadicInterval,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub samples: Vec<SampleCheck>,
    pub generators: Vec<GeneratorCheck>,
    pub max_discrepancy: Dyadic,
    pub tolerance: String,
    pub additive: bool,
    pub homogeneous: bool,
    pub disjoint: bool,
    pub zero_exact: bool,
}

impl IsometryReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.ok)
            && self.generators.iter().all(|g| g.ok)
            && self.additive
            && self.homogeneous
            && self.disjoint
            && self.zero_exact
    }
}

fn close(x: &DyadicInterval, target: &Rational, tol: &Rational) -> bool {
    x.distance_to(target) <= *tol
}

/// Checks `| ||T v|| - ||v|| | <= 2^-k + mass_error ||v||` on every sample,
/// exact additivity and homogeneity on consecutive samples, generator norms
/// and pairwise disjointness of generator images.
pub fn verify_isometry(t: &PartialIsometry, samples: &[HybridVector], k: u32) -> Result<IsometryReport> {
    let p = &t.p;
    let prec = k + 6;
    let eps = Dyadic::pow2(-(k as i64));
    let mut checks = Vec::with_capacity(samples.len());
    let mut images = Vec::with_capacity(samples.len());
    let mut max_discrepancy = Dyadic::zero();
    for (index, v) in samples.iter().enumerate() {
        let tv = t.apply(v)?;
        let norm = v.norm(p, prec);
        let image_norm = tv.norm(p, prec);
        let discrepancy = (&image_norm - &norm).mag();
        let slack = Dyadic::ceil_at(&(&t.mass_error * norm.hi().to_rational()), prec as i64);
        let tolerance = &eps + &slack;
        let ok = discrepancy <= tolerance;
        max_discrepancy = max_discrepancy.max(discrepancy.clone());
        checks.push(SampleCheck {
            index,
            norm,
            image_norm,
            discrepancy,
            tolerance,
            ok,
        });
        images.push(tv);
    }

    let mut additive = true;
    let mut homogeneous = true;
    let two = GaussianRational::real(Rational::from_integer(2.into()));
    for (i, v) in samples.iter().enumerate() {
        homogeneous &= t.apply(&v.scale(&two))? == images[i].scale(&two);
        if let Some(w) = samples.get(i + 1) {
            additive &= t.apply(&v.add(w)?)? == images[i].add(&images[i + 1])?;
        }
    }

    let mut generators = Vec::with_capacity(t.images.len());
    for (g, img) in &t.images {
        let mass = super::map::generator_mass(g);
        let norm_p = img.norm_p(p, prec);
        let tol = eps.to_rational() + &t.mass_error * &mass;
        generators.push(GeneratorCheck {
            generator: *g,
            ok: close(&norm_p, &mass, &tol),
            norm_p,
        });
    }
    let imgs: Vec<_> = t.images.values().collect();
    let disjoint = imgs
        .iter()
        .enumerate()
        .all(|(i, u)| imgs[i + 1..].iter().all(|v| u.support_disjoint(v)));
    let zero_exact = t.apply(&Vector::zero(t.source_dim()))?.is_zero();

    Ok(IsometryReport {
        samples: checks,
        generators,
        max_discrepancy,
        tolerance: format!("2^-{k} + mass_error * ||v||"),
        additive,
        homogeneous,
        disjoint,
        zero_exact,
    })
}
