//! Both paths around the q -> -1 and c -> 0 squares.

use minus_one::numerics::PrecisionContext;
use minus_one::scheme::{verify_commuting_square, Square};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    let (a, b) = (ctx.ratio(3, 2), ctx.ratio(1, 2));
    for sq in [Square::Jacobi, Square::Chihara] {
        for r in verify_commuting_square(sq, &a, &b, &ctx)? {
            println!("{:<20} {:<14} {:?} {:.2e}", r.id, r.check, r.status, r.residual.unwrap_or(0.0));
        }
    }
    Ok(())
}
