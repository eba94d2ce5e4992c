//! Christoffel and Geronimus transforms at the spectral point x = 1.

use minus_one::families::{generate, FamilyId, Params};
use minus_one::numerics::PrecisionContext;
use minus_one::scheme::{christoffel, edge_catalog, geronimus, verify_edge, EdgeKind};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    let p = Params::real(FamilyId::LittleMinus1Jacobi, &[1.5, 0.5], &ctx)?;
    let g = christoffel(&p, 5, &ctx)?;
    let back = geronimus(&g, &p, &ctx)?;
    let ps = generate(&p, 5, &ctx)?;
    let err = back.iter().zip(&ps).map(|(a, b)| a.rel_diff(b).to_f64()).fold(0.0, f64::max);
    println!("{p}: GT(CT(P)) vs P {err:.2e}");
    for e in edge_catalog().iter().filter(|e| matches!(e.kind, EdgeKind::Christoffel | EdgeKind::Geronimus)) {
        for r in verify_edge(e, &ctx)? {
            println!("{:<60} {:<16} {:?} {:.2e}", r.id, r.check, r.status, r.residual.unwrap_or(0.0));
        }
    }
    Ok(())
}
