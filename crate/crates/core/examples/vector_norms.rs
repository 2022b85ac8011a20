//! Vectors of l^p_n (+) L^p[0,1]: norms, supports and the subvector order.

use lpcat::arith::rational::ratio;
use lpcat::arith::{Exponent, GaussianRational};
use lpcat::vectors::{Dim, HybridVector, StepFunction, Vector};

fn main() -> lpcat::error::Result<()> {
    let p = Exponent::parse("3/2")?;
    let dim = Dim::Finite(2);
    let g = |s: &str| GaussianRational::parse(s);

    let steps = StepFunction::from_pieces(vec![
        (ratio(0, 1), ratio(1, 3), g("2")?),
        (ratio(1, 3), ratio(1, 1), g("-1+1i")?),
    ])?;
    let v = Vector::new([(0, g("3+4i")?)].into(), steps, dim)?;
    println!("v = {v}");
    for k in [8, 16, 32] {
        println!("||v||_p in {} (k = {k})", v.norm(&p, k));
    }

    let left = HybridVector::indicator(&ratio(0, 1), &ratio(1, 2), g("1")?, dim)?;
    let right = HybridVector::indicator(&ratio(1, 2), &ratio(1, 1), g("1")?, dim)?;
    let whole = left.add(&right)?;
    println!("halves disjoint: {}", left.support_disjoint(&right));
    println!("left ⪯ whole: {}", left.is_subvector(&whole)?);
    let half = left.scale(&g("1/2")?);
    println!("left/2 ⪯ whole: {}", half.is_subvector(&whole)?);
    println!("|supp(left) Δ supp(right)| = {}", left.symm_diff_measure(&right));
    println!("json: {}", serde_json::to_string(&whole.to_json())?);
    Ok(())
}
