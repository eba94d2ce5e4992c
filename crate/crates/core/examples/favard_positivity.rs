//! Favard positivity scans and the complementary Bannai-Ito reality test.

use minus_one::families::ccbi::first_nonreal_tau;
use minus_one::families::{FamilyId, Params};
use minus_one::numerics::PrecisionContext;
use minus_one::orthogonality::favard_scan;

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    for p in [
        Params::new(FamilyId::Hermite, vec![])?,
        Params::real(FamilyId::GeneralizedGegenbauer, &[-0.5, 0.25], &ctx)?,
        Params::real(FamilyId::ContinuousBannaiIto, &[0.25, 1.0, 0.25, 0.5], &ctx)?,
    ] {
        let r = favard_scan(&p, 200, &ctx)?;
        println!("{p}: min u = {:.4e} at n = {} pass {}", r.min_u, r.argmin_u, r.pass);
    }
    for b2 in ["0.7", "0"] {
        let p = Params::parse(FamilyId::ContinuousComplementaryBannaiIto, &format!("a1=1,b1=0.3,a2=0.5,b2={b2}"), &ctx)?;
        println!("{p}: first non-real tau {:?}", first_nonreal_tau(&p, 5, &ctx)?);
    }
    Ok(())
}
