//! Synthesizing and checking an isometry from the standard presentation onto
//! a computable presentation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpcat::adversarial::{FiniteAtomicOracle, LeftCEReal};
use lpcat::arith::rational::ratio;
use lpcat::arith::Exponent;
use lpcat::chains::{extract_atoms, partition_chains, Projector};
use lpcat::isometry::{build_t1, build_t2, glue, random_standard_vector, verify_isometry, Generator};
use lpcat::vectors::HybridVector;

fn main() -> lpcat::error::Result<()> {
    let p = Exponent::parse("3")?;
    let o = FiniteAtomicOracle::with_truth(3, p.clone(), &LeftCEReal::seed())?;
    let eps = ratio(1, 8);
    let depth = 8;
    let part = partition_chains(&o, depth, 0)?;
    let atoms = extract_atoms(&o, &part, &eps, 20)?;
    let t1 = build_t1(&o, &part, &atoms.candidates, Some(3), 20)?;
    let proj = Projector::new(&o, &part, &eps, 20)?;
    let t2 = build_t2(&proj, depth, 3, 20)?;
    let t = glue(&t1, &t2)?;

    for g in [Generator::Atom(0), Generator::Dyadic { level: 3, index: 0 }] {
        println!("T({g}) = {}", t.images[&g]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<HybridVector> = (0..25).map(|_| random_standard_vector(&mut rng, 3, 3)).collect();
    let rep = verify_isometry(&t, &samples, 6)?;
    println!(
        "25 samples: max discrepancy {}, disjoint images {}, passed {}",
        rep.max_discrepancy,
        rep.disjoint,
        rep.passed()
    );
    Ok(())
}
