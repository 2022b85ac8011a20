//! The finite-atomic construction hides a left-c.e. real in the mass of an
//! atom; a projection onto that atom recovers it digit by digit.

use lpcat::adversarial::{
    decode_gamma, decode_membership, CESetSchedule, Complement, FiniteAtomicOracle, LeftCEReal,
};
use lpcat::arith::rational::ratio;
use lpcat::arith::Exponent;
use lpcat::chains::{partition_chains, Projector};
use lpcat::tree::materialize;

fn main() -> lpcat::error::Result<()> {
    let p = Exponent::parse("3")?;
    // W = {0, 3, 5}, enumerated at stages 0, 2 and 6
    let sched = CESetSchedule::finite([(0, 0), (3, 2), (5, 6)])?;
    let lce = LeftCEReal::from_schedule(&sched)?;
    println!("gamma = {}, q_0..q_4 = {:?}", lce.gamma(), (0..5).map(|j| lce.q(j).to_string()).collect::<Vec<_>>());

    let o = FiniteAtomicOracle::with_truth(3, p.clone(), &lce)?;
    let tree = materialize(&o, 6, 0)?;
    println!("depth-6 truncation valid: {}", tree.validate(&p).passed());

    let part = partition_chains(&o, 10, 0)?;
    let proj = Projector::new(&o, &part, &ratio(1, 8), 28)?;
    let gamma = decode_gamma(&Complement::new(&o, &proj), 24)?;
    println!("decoded gamma in {gamma}");
    let bits = decode_membership(&gamma, 8)?;
    let members: Vec<usize> = bits.iter().enumerate().filter(|(_, b)| **b).map(|(x, _)| x).collect();
    println!("W ∩ [0, 8] = {members:?}");
    Ok(())
}
