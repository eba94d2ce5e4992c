//! Complex Gamma, Pochhammer symbols and terminating pFq at 60 digits.

use minus_one::numerics::{gamma, hyp_pfq_terminating, pochhammer, PrecisionContext};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::new(60)?;
    let z = ctx.parse_cnum("0.5+3i")?;
    println!("Gamma(1/2+3i) = {}", gamma(&z, &ctx)?);
    println!("(1/2)_5 = {}", pochhammer(&ctx.ratio(1, 2), 5));
    // 2F1(-3, 2; 5; 1) by Chu-Vandermonde is (3)_3/(5)_3
    let v = hyp_pfq_terminating(&[ctx.int(-3), ctx.int(2)], &[ctx.int(5)], &ctx.one(), &ctx)?;
    println!("2F1(-3,2;5;1) = {v}  (expected {})", &pochhammer(&ctx.int(3), 3) / &pochhammer(&ctx.int(5), 3));
    Ok(())
}
