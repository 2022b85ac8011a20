//! The `lpcat` command line: argument structures and a testable [`execute`].

mod input;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use input::{parse_coeffs, parse_schedule, parse_schedules, read_json, Presentation, PresentationSpec};

use crate::adversarial::{
    decode_fin, decode_gamma, decode_membership, Complement, FiniteAtomicOracle, GroundTruthProjection,
    InfiniteAtomicOracle, LeftCEReal, ProjectionKind,
};
use crate::arith::rational::parse_rational;
use crate::arith::{Exponent, Rational};
use crate::chains::{extract_atoms, partition_chains, verify_certificate, Combination, Projection, Projector};
use crate::error::{Error, Result};
use crate::isometry::{build_t1, build_t2, glue, random_standard_vector, verify_isometry, PartialIsometry};
use crate::tree::{materialize, rational_vector_norm, rational_vector_norm_p, ConcreteDisintegration, NodePath, TreeJson};
use crate::vectors::{Dim, HybridVector, VectorJson};

#[derive(Debug, Parser)]
#[command(name = "lpcat", version, about = "Presentations, chains and isometries of l^p (+) L^p[0,1]")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Exponent p >= 1, as a rational.
    #[arg(long, global = true, default_value = "3")]
    pub p: String,
    /// Precision: enclosure widths below 2^-k.
    #[arg(long, global = true, default_value_t = 20)]
    pub k: u32,
    #[arg(long, global = true, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub stage: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Presentation: `dyadic`, `standard:N`, `finite:N`, inline JSON or a file.
    #[arg(long, global = true)]
    pub pres: Option<String>,
    /// Schedule(s): `seed`, `random`, `random:N`, inline JSON or a file.
    #[arg(long, global = true)]
    pub schedule: Option<String>,
    /// Write the artifact here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the disintegration axioms on a finite tree.
    Validate {
        /// Tree JSON; otherwise `--pres` is materialized to `--depth`.
        #[arg(long)]
        tree: Option<String>,
    },
    /// Norm of a rational vector given by node coefficients or explicitly.
    Norm {
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        vector: Option<String>,
    },
    /// Almost norm-maximizing chain partition with certificates.
    Chains,
    /// Chain limits classified into atoms and vanishing chains.
    Atoms {
        #[arg(long, default_value = "1/8")]
        eps: String,
    },
    /// Projection onto the nonatomic part.
    Project {
        #[arg(long)]
        node: Option<String>,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long, default_value = "1/8")]
        eps: String,
    },
    /// Materialize one of the adversarial constructions.
    #[command(subcommand)]
    Adversary(Adversary),
    /// Extract information from projections.
    #[command(subcommand)]
    Decode(Decode),
    /// Synthesize or check an isometry from the standard presentation.
    #[command(subcommand)]
    Isometry(Isometry),
}

#[derive(Debug, Subcommand)]
pub enum Adversary {
    /// Finite-atomic construction over l^p_n (+) L^p[0,1].
    Finite {
        #[arg(long, default_value_t = 3)]
        n: u64,
    },
    /// Infinite-atomic construction over l^p (+) L^p[0,1].
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Via {
    /// Projections computed from chains.
    Chains,
    /// Projections read off ground-truth labels.
    Truth,
}

#[derive(Debug, Subcommand)]
pub enum Decode {
    /// Enclosure of gamma from the finite-atomic presentation.
    Gamma {
        #[arg(long, value_enum, default_value = "chains")]
        via: Via,
        #[arg(long, default_value = "1/8")]
        eps: String,
    },
    /// The bits of W up to m read off gamma.
    Bits {
        #[arg(long, default_value_t = 8)]
        m: u64,
        #[arg(long, value_enum, default_value = "chains")]
        via: Via,
        #[arg(long, default_value = "1/8")]
        eps: String,
    },
    /// Whether W_e is finite, from the infinite-atomic presentation.
    Fin {
        #[arg(long)]
        e: u64,
        #[arg(long, value_enum, default_value = "truth")]
        via: Via,
        #[arg(long, default_value = "1/8")]
        eps: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Isometry {
    /// Build T = glue(T1, T2) onto the target presentation.
    Build {
        #[arg(long)]
        target: Option<String>,
        /// Level of the dyadic generators listed in the artifact.
        #[arg(long, default_value_t = 4)]
        level: u32,
        #[arg(long, default_value = "1/8")]
        eps: String,
    },
    /// Check a built map on seeded random vectors.
    Verify {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Dyadic level of the random step functions.
        #[arg(long, default_value_t = 4)]
        level: u32,
        /// Tolerance exponent: discrepancies up to 2^-tol pass.
        #[arg(long, default_value_t = 6)]
        tol: u32,
    },
}

/// Exit status of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    ValidationFailed,
}

pub struct Artifact {
    pub json: Value,
    pub status: Status,
}

impl Artifact {
    fn ok(json: Value) -> Self {
        Artifact { json, status: Status::Ok }
    }

    fn checked(json: Value, passed: bool) -> Self {
        Artifact {
            json,
            status: if passed { Status::Ok } else { Status::ValidationFailed },
        }
    }
}

/// What the binary prints and returns.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_insufficient() {
        3
    } else {
        1
    }
}

pub fn error_json(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    json!({ "error": { "kind": kind, "message": e.to_string(), "exit_code": exit_code(e) } })
}

/// Runs a parsed command line: 0 ok, 1 malformed input, 2 validation
/// failure, 3 insufficient stage or depth.
pub fn execute(cli: &Cli) -> Outcome {
    let res = run(cli).and_then(|a| {
        let text = serde_json::to_string_pretty(&a.json)? + "\n";
        match &cli.run.output {
            Some(path) => {
                std::fs::write(path, &text)?;
                Ok((a.status, String::new()))
            }
            None => Ok((a.status, text)),
        }
    });
    match res {
        Ok((status, stdout)) => Outcome {
            code: if status == Status::Ok { 0 } else { 2 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: error_json(&e).to_string() + "\n",
        },
    }
}

/// Parses `args` (including the program name) and executes.
pub fn execute_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let obj = json!({ "error": { "kind": "Usage", "message": e.to_string(), "exit_code": 1 } });
            Outcome {
                code: 1,
                stdout: String::new(),
                stderr: obj.to_string() + "\n",
            }
        }
    }
}

fn missing(flag: &str) -> Error {
    Error::Invalid(format!("missing required flag --{flag}"))
}

impl RunConfig {
    fn exponent(&self) -> Result<Exponent> {
        Exponent::parse(&self.p)
    }

    fn presentation(&self, arg: Option<&str>) -> Result<Presentation> {
        let spec = PresentationSpec::parse(arg.or(self.pres.as_deref()).ok_or_else(|| missing("pres"))?)?;
        spec.load(&self.exponent()?)
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn combination_json(c: &Combination) -> Value {
    json!({
        "nodes": c.nodes.iter().map(|(n, a)| (n.to_string(), a.to_string())).collect::<BTreeMap<_, _>>(),
        "limits": c.limits.iter().map(|(j, a)| (j.to_string(), a.to_string())).collect::<BTreeMap<_, _>>(),
    })
}

fn projection_json(pr: &Projection, norm: Option<Value>) -> Value {
    json!({
        "combination": combination_json(&pr.combination),
        "vector": pr.vector.as_ref().map(|v| v.to_json()),
        "error_p": pr.error_p.to_string(),
        "exact": pr.is_exact(),
        "norm": norm,
    })
}

pub fn run(cli: &Cli) -> Result<Artifact> {
    let cfg = &cli.run;
    match &cli.command {
        Command::Validate { tree } => {
            let p = cfg.exponent()?;
            let t = match tree {
                Some(path) => ConcreteDisintegration::from_json(&read_json::<TreeJson>(path)?)?,
                None => materialize(cfg.presentation(None)?.oracle(), cfg.depth, cfg.stage)?,
            };
            let rep = t.validate(&p);
            Ok(Artifact::checked(to_value(&rep)?, rep.passed()))
        }
        Command::Norm { coeffs, vector } => match (coeffs, vector) {
            (_, Some(v)) => {
                let p = cfg.exponent()?;
                let v = HybridVector::from_json(&read_json::<VectorJson>(v)?)?;
                Ok(Artifact::ok(json!({
                    "norm": v.norm(&p, cfg.k),
                    "norm_p": v.norm_p(&p, cfg.k),
                    "k": cfg.k,
                })))
            }
            (Some(c), None) => {
                let pres = cfg.presentation(None)?;
                let coeffs = parse_coeffs(c)?;
                let o = pres.oracle();
                Ok(Artifact::ok(json!({
                    "norm": rational_vector_norm(o, &coeffs, cfg.stage, cfg.k)?,
                    "norm_p": rational_vector_norm_p(o, &coeffs, cfg.stage, cfg.k)?,
                    "k": cfg.k,
                })))
            }
            (None, None) => Err(missing("coeffs")),
        },
        Command::Chains => {
            let pres = cfg.presentation(None)?;
            let o = pres.oracle();
            let part = partition_chains(o, cfg.depth, cfg.stage)?;
            let mut verified = true;
            for c in &part.chains {
                for cert in &c.certificates {
                    verified &= verify_certificate(o, cert, cfg.stage, cfg.k)?;
                }
            }
            let mut v = to_value(&part)?;
            v["certificates_verified"] = json!(verified);
            Ok(Artifact::checked(v, verified))
        }
        Command::Atoms { eps } => {
            let pres = cfg.presentation(None)?;
            let eps = parse_rational(eps)?;
            let part = partition_chains(pres.oracle(), cfg.depth, cfg.stage)?;
            let rep = extract_atoms(pres.oracle(), &part, &eps, cfg.k)?;
            Ok(Artifact::ok(json!({
                "candidates": rep.candidates.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
                "vanishing": rep.vanishing,
                "undecided": rep.undecided,
                "disjoint": rep.disjoint,
            })))
        }
        Command::Project { node, coeffs, eps } => {
            let pres = cfg.presentation(None)?;
            let o = pres.oracle();
            let eps = parse_rational(eps)?;
            let part = partition_chains(o, cfg.depth, cfg.stage)?;
            let proj = Projector::new(o, &part, &eps, cfg.k)?;
            let x = match (node, coeffs) {
                (Some(n), _) => Combination::node(NodePath::parse(n)?),
                (None, Some(c)) => Combination::from_nodes(parse_coeffs(c)?),
                (None, None) => return Err(missing("node")),
            };
            let pr = proj.project(&x)?;
            let norm = match proj.norm(&pr, cfg.k) {
                Ok(n) => Some(to_value(&n)?),
                Err(Error::Unmaterializable(_)) => None,
                Err(e) => return Err(e),
            };
            Ok(Artifact::ok(projection_json(&pr, norm)))
        }
        Command::Adversary(a) => adversary(cfg, a),
        Command::Decode(d) => decode(cfg, d),
        Command::Isometry(i) => isometry(cfg, i),
    }
}

fn adversary(cfg: &RunConfig, a: &Adversary) -> Result<Artifact> {
    let p = cfg.exponent()?;
    let sched = cfg.schedule.as_deref().unwrap_or("seed");
    let tree = match a {
        Adversary::Finite { n } => {
            let lce = match parse_schedule(sched, cfg.seed, false)? {
                None => LeftCEReal::seed(),
                Some(s) => LeftCEReal::from_schedule(&s)?,
            };
            let o = FiniteAtomicOracle::with_truth(*n, p, &lce)?;
            materialize(&o, cfg.depth, cfg.stage)?
        }
        Adversary::Infinite => {
            let schedules = parse_schedules(cfg.schedule.as_deref().ok_or_else(|| missing("schedule"))?, cfg.seed)?;
            let o = InfiniteAtomicOracle::with_truth(p, schedules);
            materialize(&o, cfg.depth, cfg.stage)?
        }
    };
    Ok(Artifact::ok(to_value(&tree.to_json())?))
}

fn finite_target(cfg: &RunConfig) -> Result<FiniteAtomicOracle> {
    match cfg.presentation(None)? {
        Presentation::Finite(o) => Ok(o),
        _ => Err(Error::Invalid("expected a finite_atomic presentation".into())),
    }
}

fn gamma_enclosure(cfg: &RunConfig, o: &FiniteAtomicOracle, via: Via, eps: &str, k: u32) -> Result<crate::arith::DyadicInterval> {
    match via {
        Via::Truth => decode_gamma(&GroundTruthProjection::new(o, ProjectionKind::Axis(0)), k),
        Via::Chains => {
            let eps = parse_rational(eps)?;
            let part = partition_chains(o, cfg.depth, cfg.stage)?;
            let proj = Projector::new(o, &part, &eps, k + 4)?;
            decode_gamma(&Complement::new(o, &proj), k)
        }
    }
}

fn decode(cfg: &RunConfig, d: &Decode) -> Result<Artifact> {
    match d {
        Decode::Gamma { via, eps } => {
            let o = finite_target(cfg)?;
            let g = gamma_enclosure(cfg, &o, *via, eps, cfg.k)?;
            Ok(Artifact::ok(json!({ "gamma": g, "k": cfg.k })))
        }
        Decode::Bits { m, via, eps } => {
            let o = finite_target(cfg)?;
            // width below 3^-(m+4) needs about 1.59 (m + 4) bits
            let k = cfg.k.max((*m as u32 + 5) * 8 / 5 + 2);
            let g = gamma_enclosure(cfg, &o, *via, eps, k)?;
            let bits = decode_membership(&g, *m)?;
            let members: Vec<u64> = (0..).zip(&bits).filter(|(_, &b)| b).map(|(x, _)| x).collect();
            Ok(Artifact::ok(json!({ "gamma": g, "bits": bits, "members": members, "m": m })))
        }
        Decode::Fin { e, via, eps } => {
            let pres = cfg.presentation(None)?;
            let Presentation::Infinite(o) = &pres else {
                return Err(Error::Invalid("expected an infinite_atomic presentation".into()));
            };
            let dec = match via {
                Via::Truth => decode_fin(&GroundTruthProjection::new(o, ProjectionKind::Continuous), *e)?,
                Via::Chains => {
                    let eps = parse_rational(eps)?;
                    let part = partition_chains(o, cfg.depth, cfg.stage)?;
                    let proj = Projector::new(o, &part, &eps, *e as u32 + 8)?;
                    decode_fin(&proj, *e)?
                }
            };
            Ok(Artifact::ok(to_value(&dec)?))
        }
    }
}

fn isometry(cfg: &RunConfig, i: &Isometry) -> Result<Artifact> {
    match i {
        Isometry::Build { target, level, eps } => {
            let pres = cfg.presentation(target.as_deref())?;
            let o = pres.oracle();
            let eps: Rational = parse_rational(eps)?;
            let part = partition_chains(o, cfg.depth, cfg.stage)?;
            let atoms = extract_atoms(o, &part, &eps, cfg.k)?;
            let expected = match o.dim() {
                Dim::Finite(n) => Some(n as usize),
                Dim::Omega => None,
            };
            let t1 = build_t1(o, &part, &atoms.candidates, expected, cfg.k)?;
            let proj = Projector::new(o, &part, &eps, cfg.k)?;
            let t2 = build_t2(&proj, cfg.depth, *level, cfg.k)?;
            Ok(Artifact::ok(to_value(&glue(&t1, &t2)?)?))
        }
        Isometry::Verify {
            map,
            samples,
            level,
            tol,
        } => {
            let t: PartialIsometry = read_json(map)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let vs: Vec<HybridVector> = (0..*samples)
                .map(|_| random_standard_vector(&mut rng, t.source_atoms(), *level))
                .collect();
            let rep = verify_isometry(&t, &vs, *tol)?;
            let passed = rep.passed();
            Ok(Artifact::checked(
                json!({
                    "seed": cfg.seed,
                    "samples": samples,
                    "passed": passed,
                    "max_discrepancy": rep.max_discrepancy,
                    "tolerance": rep.tolerance,
                    "additive": rep.additive,
                    "homogeneous": rep.homogeneous,
                    "disjoint": rep.disjoint,
                    "zero_exact": rep.zero_exact,
                    "generators_ok": rep.generators.iter().all(|g| g.ok),
                    "failed_samples": rep.samples.iter().filter(|s| !s.ok).map(|s| s.index).collect::<Vec<_>>(),
                    "identity": t.is_identity(),
                }),
                passed,
            ))
        }
    }
}
