//! Shifts, reflections and exact rational collapse.

use minus_one::polynomials::{Polynomial, RationalFunction};
use minus_one::numerics::PrecisionContext;

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    let p = Polynomial::from_reals(&[1.0, -2.0, 0.0, 1.0], &ctx);
    println!("p        = {:?}", p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("p(x+i)   = {:?}", p.shift(&ctx.i()).coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("p(-x)    = {:?}", p.reflect().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let g = Polynomial::from_reals(&[0.25, 1.0], &ctx);
    let h = Polynomial::from_reals(&[-0.25, 1.0], &ctx);
    let r = RationalFunction::new(g.mul(&h), g)?;
    match r.is_polynomial(&ctx)? {
        Some(q) => println!("((x+1/4)(x-1/4))/(x+1/4) = {:?}", q.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        None => println!("not a polynomial"),
    }
    Ok(())
}
