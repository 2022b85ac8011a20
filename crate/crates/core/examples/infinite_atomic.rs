//! The infinite-atomic construction: whether W_e is finite shows up as whether
//! the node (e) has a nonatomic part.

use lpcat::adversarial::{decode_fin, CESetSchedule, InfiniteAtomicOracle};
use lpcat::arith::rational::ratio;
use lpcat::arith::Exponent;
use lpcat::chains::{partition_chains, Projector};

fn main() -> lpcat::error::Result<()> {
    let p = Exponent::parse("3")?;
    let schedules = vec![
        CESetSchedule::finite([(2, 0), (7, 1)])?,
        CESetSchedule::new(vec![(0, 0)], true)?,
        CESetSchedule::empty(),
        CESetSchedule::new(vec![], true)?,
    ];
    let o = InfiniteAtomicOracle::with_truth(p, schedules);
    let part = partition_chains(&o, 6, 10)?;
    let proj = Projector::new(&o, &part, &ratio(1, 8), 16)?;
    for e in 0..4 {
        let d = decode_fin(&proj, e)?;
        println!(
            "e = {e}: ||P phi((e))|| in {}, threshold {} -> in Fin: {} (truth {})",
            d.norm,
            d.threshold,
            d.in_fin,
            o.in_fin(e)
        );
    }
    Ok(())
}
