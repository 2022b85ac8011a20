//! The projection onto the nonatomic part, computed from a chain partition.

use lpcat::adversarial::{FiniteAtomicOracle, LeftCEReal};
use lpcat::arith::rational::ratio;
use lpcat::arith::Exponent;
use lpcat::chains::{partition_chains, Projector};
use lpcat::tree::{NodePath, PresentationOracle};

fn main() -> lpcat::error::Result<()> {
    let p = Exponent::parse("3")?;
    let lce = LeftCEReal::seed();
    let o = FiniteAtomicOracle::with_truth(2, p.clone(), &lce)?;
    let part = partition_chains(&o, 8, 0)?;
    let proj = Projector::new(&o, &part, &ratio(1, 8), 20)?;
    println!("chains treated as atoms: {:?}", proj.atom_chains());

    for node in ["", "0", "0.0", "1", "2"] {
        let n: NodePath = node.parse()?;
        let pr = proj.project_node(&n)?;
        let label = o.label(&n).expect("ground truth");
        println!(
            "||P phi({n})|| in {}, ||phi({n})|| in {} (exact: {})",
            proj.norm(&pr, 20)?,
            label.norm(&p, 20),
            pr.is_exact()
        );
        assert_eq!(proj.project(&pr.combination)?.combination, pr.combination);
    }
    println!("gamma - q_0 = {}", lce.gamma() - lce.q(0));
    Ok(())
}
