//! The scheme as a DOT graph, annotated with verification status.

use std::collections::BTreeMap;

use minus_one::numerics::PrecisionContext;
use minus_one::report::Status;
use minus_one::scheme::{edge_catalog, export_graph, verify_edge, GraphFormat};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    let mut st = BTreeMap::new();
    for e in edge_catalog() {
        let s = verify_edge(&e, &ctx)?.iter().fold(Status::Pass, |s, r| s.and(r.status));
        st.insert(e.id(), s);
    }
    print!("{}", export_graph(GraphFormat::Dot, Some(&st)));
    Ok(())
}
