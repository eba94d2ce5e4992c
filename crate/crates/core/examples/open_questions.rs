//! Printed variants that disagree, and which one verifies.

use minus_one::numerics::PrecisionContext;
use minus_one::scheme::resolve_open_questions;

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    for r in resolve_open_questions(&ctx)? {
        println!("{}: {}", r.id, r.question);
        for (name, status, err) in &r.variants {
            println!("  {name:<28} {status:?} {}", err.map(|e| format!("{e:.2e}")).unwrap_or_default());
        }
        println!("  chosen: {}", r.chosen);
    }
    Ok(())
}
