//! Recurrence coefficients and monic polynomials of the Chihara family.

use minus_one::families::{generate, recurrence_table, FamilyId, Params};
use minus_one::numerics::{format_cnum, PrecisionContext};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::new(30)?;
    let p = Params::parse(FamilyId::Chihara, "alpha=0.5,beta=1.5,gamma=0.25", &ctx)?;
    let rec = recurrence_table(&p, 4, &ctx)?;
    let polys = generate(&p, 4, &ctx)?;
    println!("{p}");
    for (n, (r, q)) in rec.iter().zip(&polys).enumerate() {
        let c: Vec<String> = q.coeffs().iter().map(|z| format_cnum(z, 12)).collect();
        println!("n={n} b={} u={} P=[{}]", format_cnum(&r.b, 12), format_cnum(&r.u, 12), c.join(", "));
    }
    Ok(())
}
