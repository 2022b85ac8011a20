//! Presentations as disintegration trees: materialize, validate, and compute
//! norms of rational combinations from node masses alone.

use std::collections::BTreeMap;

use lpcat::arith::{Exponent, GaussianRational};
use lpcat::tree::{materialize, rational_vector_norm_p, NodePath, PresentationOracle, StandardPresentation};

fn main() -> lpcat::error::Result<()> {
    let p = Exponent::parse("3")?;
    let s = StandardPresentation::new(2, p.clone());

    let tree = materialize(&s, 4, 0)?;
    let rep = tree.validate(&p);
    println!("depth-4 tree: {} nodes, axioms hold: {}", rep.nodes, rep.passed());

    for node in ["", "0", "0.1", "1", "2"] {
        let n: NodePath = node.parse()?;
        println!("||phi({n})||^p in {}", s.node_norm_p(&n, 20)?);
    }

    // phi() + phi(0.0) = e_0 + e_1 + 2 chi_[0,1/2) + chi_[1/2,1)
    let coeffs: BTreeMap<NodePath, GaussianRational> = [
        (NodePath::root(), GaussianRational::one()),
        (NodePath::from([0, 0]), GaussianRational::one()),
    ]
    .into();
    println!("||phi() + phi(0.0)||^p in {}", rational_vector_norm_p(&s, &coeffs, 0, 20)?);
    println!("direct: {}", tree.combine(&coeffs)?.norm_p(&p, 20));
    Ok(())
}
