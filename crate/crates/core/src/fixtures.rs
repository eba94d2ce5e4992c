//! Reference parameter points shipped with the crate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::families::{FamilyId, Params};
use crate::numerics::PrecisionContext;

const PARAMS_JSON: &str = include_str!("../fixtures/params.json");

/// Parameter points per family, in catalog order.
pub fn fixtures(ctx: &PrecisionContext) -> Result<Vec<Params>> {
    let raw: BTreeMap<String, Vec<Vec<String>>> =
        serde_json::from_str(PARAMS_JSON).map_err(|e| Error::BadParameter(format!("fixtures: {e}")))?;
    let mut out = Vec::new();
    for f in FamilyId::scheme() {
        for point in raw.get(f.id()).map(Vec::as_slice).unwrap_or(&[]) {
            let v: Vec<&str> = point.iter().map(String::as_str).collect();
            out.push(Params::parse_positional(*f, &v, ctx)?);
        }
    }
    Ok(out)
}

pub fn fixtures_for(family: FamilyId, ctx: &PrecisionContext) -> Result<Vec<Params>> {
    Ok(fixtures(ctx)?.into_iter().filter(|p| p.family() == family).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_per_family() {
        let c = PrecisionContext::default();
        let all = fixtures(&c).unwrap();
        assert_eq!(all.len(), 14 * 3 + 1);
        assert_eq!(fixtures_for(FamilyId::Hermite, &c).unwrap().len(), 1);
    }
}
