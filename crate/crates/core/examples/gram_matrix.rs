//! Orthogonality by double-exponential quadrature, including a Gamma-modulus weight.

use minus_one::families::{FamilyId, Params};
use minus_one::numerics::PrecisionContext;
use minus_one::orthogonality::{default_tol, gram, mass};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    let h = mass(&Params::new(FamilyId::Hermite, vec![])?, &ctx)?;
    println!("int exp(-x^2) = {:.45}", h.value[0]);
    for p in [
        Params::real(FamilyId::BigMinus1Jacobi, &[1.5, 0.5, 0.25], &ctx)?,
        Params::real(FamilyId::ContinuousBannaiIto, &[0.5, 1.0, 1.5, 0.75], &ctx)?,
    ] {
        let g = gram(&p, 8, &default_tol(&ctx), &ctx)?;
        println!("{p}: off {:.2e} diag {:.2e} nodes {}", g.off_diagonal_max, g.diagonal_max(), g.node_count);
    }
    Ok(())
}
