//! Hypergeometric closed forms against the three-term recurrence.

use minus_one::families::{closed_form, generate, FamilyId};
use minus_one::fixtures::fixtures_for;
use minus_one::numerics::PrecisionContext;

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    for &f in FamilyId::scheme() {
        let p = fixtures_for(f, &ctx)?.remove(0);
        let ps = generate(&p, 12, &ctx)?;
        let mut worst = 0.0f64;
        for n in 0..=12 {
            worst = worst.max(closed_form(&p, n, &ctx)?.rel_diff(&ps[n as usize]).to_f64());
        }
        println!("{:<40} {worst:.2e}", p.to_string());
    }
    Ok(())
}
