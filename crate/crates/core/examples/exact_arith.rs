//! Rigorous enclosures: rational powers, moduli and exact radicals.

use lpcat::arith::rational::ratio;
use lpcat::arith::{abs_pow, rat_pow, Exponent, GaussianRational, Surd};

fn main() -> lpcat::error::Result<()> {
    // (3/4)^(2/3) on a 2^-20 grid; exact powers come back as points
    println!("(3/4)^(2/3) in {}", rat_pow(&ratio(3, 4), &ratio(2, 3), 20)?);
    println!("(1/4)^(1/2) =  {}", rat_pow(&ratio(1, 4), &ratio(1, 2), 20)?);

    let p = Exponent::parse("3")?;
    let c = GaussianRational::parse("1+1i")?;
    println!("|1+i|^3 in {}", abs_pow(&c, &p, 16));

    // (1/3)^(1/3) is kept symbolically, so it cancels exactly
    let a = Surd::radical(GaussianRational::one(), &ratio(1, 3), &p.recip())?;
    let twice = a.add(&a);
    println!("a = {a}, 2a - a - a = {}", twice.sub(&a).sub(&a));
    let (re, _) = twice.enclose(24);
    println!("2a in {re}");
    println!("a^3 = {}", a.mul(&a).mul(&a).as_gauss().expect("rational cube"));
    assert_eq!(a.mul(&a).mul(&a).as_gauss(), Some(GaussianRational::real(ratio(1, 3))));
    Ok(())
}
