//! Convergence ladder of a limit edge with order fit and Richardson bound.

use minus_one::numerics::PrecisionContext;
use minus_one::scheme::{find_edge, verify_limit};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    for spec in ["cbi:b1j", "chi:mp", "qmp:mp"] {
        let e = find_edge(spec)?;
        let base = e.fixture_points(&ctx)?.remove(0);
        let r = verify_limit(&e, &base, 10, None, &ctx)?;
        println!("{} ({})", e.id(), e.map);
        for (h, err) in r.h.iter().zip(&r.errors) {
            println!("  h={h:.0e} error {err:.3e}");
        }
        println!("  order {:?} extrapolated {:?} {:?}", r.order, r.extrapolated_error, r.status);
    }
    Ok(())
}
