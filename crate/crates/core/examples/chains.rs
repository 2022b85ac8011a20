//! Almost norm-maximizing chains, their certificates and the atoms they find.

use lpcat::adversarial::{FiniteAtomicOracle, LeftCEReal};
use lpcat::arith::rational::ratio;
use lpcat::arith::Exponent;
use lpcat::chains::{extract_atoms, partition_chains, verify_certificate};

fn main() -> lpcat::error::Result<()> {
    let p = Exponent::parse("3")?;
    let o = FiniteAtomicOracle::with_truth(3, p, &LeftCEReal::seed())?;
    let part = partition_chains(&o, 10, 0)?;
    println!("{} nodes in {} chains", part.assignment.len(), part.len());
    for c in part.chains.iter().take(4) {
        let ok = c
            .certificates
            .iter()
            .map(|cert| verify_certificate(&o, cert, 0, 24))
            .collect::<lpcat::error::Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        println!("chain {}: {} .. {} ({} steps, certified: {ok})", c.id, c.start(), c.top(), c.nodes.len() - 1);
    }

    let rep = extract_atoms(&o, &part, &ratio(1, 8), 20)?;
    for a in &rep.candidates {
        println!("atom from chain {} at {}: norm in {}", a.chain_id, a.node, a.norm);
    }
    println!("vanishing chains: {}, undecided: {}", rep.vanishing.len(), rep.undecided.len());
    Ok(())
}
