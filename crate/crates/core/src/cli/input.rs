use std::collections::BTreeMap;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::adversarial::{CESetSchedule, FiniteAtomicOracle, InfiniteAtomicOracle, LeftCEReal};
use crate::arith::{Exponent, GaussianRational};
use crate::error::{Error, Result};
use crate::tree::{ConcreteDisintegration, ConcreteOracle, NodePath, PresentationOracle, StandardPresentation, TreeJson};

/// Reads JSON from an inline document (starting with `{` or `[`) or a file path.
pub fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(serde_json::from_str(t)?);
    }
    let text = std::fs::read_to_string(Path::new(arg))?;
    Ok(serde_json::from_str(&text)?)
}

/// A presentation description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresentationSpec {
    /// The standard presentation of `l^p_n (+) L^p[0,1]`.
    Standard { atoms: u64 },
    /// The finite-atomic construction over `l^p_n (+) L^p[0,1]`; without a
    /// schedule the fixed example `gamma = 2/3` is used.
    FiniteAtomic {
        n: u64,
        #[serde(default)]
        schedule: Option<CESetSchedule>,
    },
    /// The infinite-atomic construction over `l^p (+) L^p[0,1]`.
    InfiniteAtomic {
        schedules: Vec<CESetSchedule>,
        #[serde(default = "yes")]
        truth: bool,
    },
    /// An explicit finite tree, with optional reveal stages per node.
    Tree {
        tree: TreeJson,
        #[serde(default)]
        reveal: BTreeMap<NodePath, u64>,
    },
}

fn yes() -> bool {
    true
}

impl PresentationSpec {
    /// Accepts `dyadic`, `standard:N`, `finite:N`, inline JSON or a file path.
    pub fn parse(arg: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid presentation {arg:?}"));
        if arg == "dyadic" {
            return Ok(PresentationSpec::Standard { atoms: 0 });
        }
        if let Some(n) = arg.strip_prefix("standard:") {
            return Ok(PresentationSpec::Standard {
                atoms: n.parse().map_err(|_| bad())?,
            });
        }
        if let Some(n) = arg.strip_prefix("finite:") {
            return Ok(PresentationSpec::FiniteAtomic {
                n: n.parse().map_err(|_| bad())?,
                schedule: None,
            });
        }
        read_json(arg)
    }

    pub fn load(&self, p: &Exponent) -> Result<Presentation> {
        Ok(match self {
            PresentationSpec::Standard { atoms } => Presentation::Standard(StandardPresentation::new(*atoms, p.clone())),
            PresentationSpec::FiniteAtomic { n, schedule } => {
                let lce = match schedule {
                    None => LeftCEReal::seed(),
                    Some(s) => LeftCEReal::from_schedule(s)?,
                };
                Presentation::Finite(FiniteAtomicOracle::with_truth(*n, p.clone(), &lce)?)
            }
            PresentationSpec::InfiniteAtomic { schedules, truth } => Presentation::Infinite(if *truth {
                InfiniteAtomicOracle::with_truth(p.clone(), schedules.clone())
            } else {
                InfiniteAtomicOracle::new(p.clone(), schedules.clone())
            }),
            PresentationSpec::Tree { tree, reveal } => {
                let t = ConcreteDisintegration::from_json(tree)?;
                Presentation::Tree(ConcreteOracle::new(t, p.clone()).with_reveal(reveal.clone()))
            }
        })
    }
}

/// A loaded presentation oracle.
pub enum Presentation {
    Standard(StandardPresentation),
    Finite(FiniteAtomicOracle),
    Infinite(InfiniteAtomicOracle),
    Tree(ConcreteOracle),
}

impl Presentation {
    pub fn oracle(&self) -> &dyn PresentationOracle {
        match self {
            Presentation::Standard(o) => o,
            Presentation::Finite(o) => o,
            Presentation::Infinite(o) => o,
            Presentation::Tree(o) => o,
        }
    }
}

/// One schedule: `random` (seeded), `seed` for the fixed example, or JSON.
pub fn parse_schedule(arg: &str, seed: u64, total: bool) -> Result<Option<CESetSchedule>> {
    match arg {
        "seed" => Ok(None),
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Some(CESetSchedule::random(&mut rng, 8, 8, 4, total)))
        }
        _ => read_json(arg).map(Some),
    }
}

/// A list of schedules: `random:N` (seeded, alternating finite and total) or JSON.
pub fn parse_schedules(arg: &str, seed: u64) -> Result<Vec<CESetSchedule>> {
    if let Some(n) = arg.strip_prefix("random:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("invalid schedule count {n:?}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok((0..n)
            .map(|i| CESetSchedule::random(&mut rng, 8, 8, 4, i % 2 == 1))
            .collect());
    }
    read_json(arg)
}

/// Coefficients keyed by node path, e.g. `{"0": "1", "1": "-1"}`.
pub fn parse_coeffs(arg: &str) -> Result<BTreeMap<NodePath, GaussianRational>> {
    let raw: BTreeMap<String, String> = read_json(arg)?;
    raw.iter()
        .map(|(k, v)| Ok((NodePath::parse(k)?, GaussianRational::parse(v)?)))
        .collect()
}
