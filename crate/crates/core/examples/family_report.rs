//! The family verification suite as a JSON report.

use minus_one::cli::family_checks;
use minus_one::families::FamilyId;
use minus_one::numerics::PrecisionContext;
use minus_one::report::Report;

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    let mut r = Report::new("example", serde_json::json!({ "family": "gegenbauer", "digits": ctx.digits() }));
    r.results = family_checks(FamilyId::Gegenbauer, &[], &ctx)?;
    r.sort();
    println!("{}", r.to_json());
    std::process::exit(r.status().exit_code());
}
