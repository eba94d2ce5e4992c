//! The catalog of families: identifiers, parameter schemas, recurrences,
//! closed forms, weights, norms and eigen systems.

mod catalog;
pub mod ccbi;
mod closed_form;
mod eigen;
mod recurrence;
mod weight;

pub use catalog::{catalog, FamilyId, FamilyInfo, FamilyKind};
pub use closed_form::{closed_form, closed_form_printed, closed_form_raw, hyp_poly, printed_leading};
pub use eigen::{default_free, eigen_system, eigen_system_variant, has_free_parameter, EigenSystem, OperatorVariant};
pub use recurrence::{generate, lqj_printed_b, recurrence, recurrence_table, RecurrencePair};
pub use weight::{admissibility, norm, norm_printed, weight_spec, Bound, Component, Decay, Density, Node, WeightSpec};

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::numerics::{format_cnum, CNum, PrecisionContext};

/// Named parameter values for one family.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    family: FamilyId,
    values: Vec<CNum>,
}

impl Params {
    pub fn new(family: FamilyId, values: Vec<CNum>) -> Result<Params> {
        let names = family.param_names();
        if values.len() != names.len() {
            return Err(Error::BadParameter(format!(
                "{} takes {} parameters ({}), got {}",
                family,
                names.len(),
                names.join(", "),
                values.len()
            )));
        }
        Ok(Params { family, values })
    }

    /// Real parameters given as f64; handy in tests and examples.
    pub fn real(family: FamilyId, vals: &[f64], ctx: &PrecisionContext) -> Result<Params> {
        Params::new(family, vals.iter().map(|v| ctx.from_real(&ctx.real(*v))).collect())
    }

    /// Positional decimal or rational strings, e.g. `["1/4", "0.7+0.4i"]`.
    pub fn parse_positional(family: FamilyId, vals: &[&str], ctx: &PrecisionContext) -> Result<Params> {
        let v = vals.iter().map(|s| ctx.parse_cnum(s)).collect::<Result<Vec<_>>>()?;
        Params::new(family, v)
    }

    /// `name=value` pairs separated by commas. Every parameter must be given.
    pub fn parse(family: FamilyId, spec: &str, ctx: &PrecisionContext) -> Result<Params> {
        let names = family.param_names();
        let mut slots: Vec<Option<CNum>> = vec![None; names.len()];
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::BadParameter(format!("expected name=value, got `{item}`")))?;
            let k = k.trim();
            let idx = names
                .iter()
                .position(|n| *n == k)
                .ok_or_else(|| Error::BadParameter(format!("{family} has no parameter `{k}`")))?;
            slots[idx] = Some(ctx.parse_cnum(v.trim())?);
        }
        let mut values = Vec::with_capacity(names.len());
        for (i, s) in slots.into_iter().enumerate() {
            values.push(s.ok_or_else(|| {
                Error::BadParameter(format!("{family}: missing parameter `{}`", names[i]))
            })?);
        }
        Params::new(family, values)
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn values(&self) -> &[CNum] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Option<&CNum> {
        let idx = self.family.param_names().iter().position(|n| *n == name)?;
        Some(&self.values[idx])
    }

    /// Copy with one slot replaced.
    pub fn with(&self, idx: usize, v: CNum) -> Params {
        let mut p = self.clone();
        p.values[idx] = v;
        p
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.is_real())
    }

    /// `name=value` pairs at the given number of digits.
    pub fn to_pairs(&self, digits: usize) -> Vec<(String, String)> {
        self.family
            .param_names()
            .iter()
            .zip(&self.values)
            .map(|(n, v)| (n.to_string(), format_cnum(v, digits)))
            .collect()
    }
}

impl Index<usize> for Params {
    type Output = CNum;
    fn index(&self, i: usize) -> &CNum {
        &self.values[i]
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.to_pairs(12).into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.family, s.join(", "))
    }
}
