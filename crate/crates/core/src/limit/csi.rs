use serde::Serialize;

use crate::algebra::{format_rational, Polynomial};
use crate::curvature::{invariants, Invariant, InvariantBasis};
use crate::metric::FullMetric;

use super::LimitError;

pub const CSI_LABEL: &str = "CSI certificate up to the configured invariant basis";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantValue {
    pub invariant: Invariant,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CsiCertificate {
    pub label: &'static str,
    pub values: Vec<InvariantValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum CsiOutcome {
    Constant(CsiCertificate),
    /// Invariants with non-constant values.
    NotConstant {
        offending: Vec<InvariantValue>,
    },
}

/// Constant iff every basis invariant is a degree-0 polynomial.
pub fn csi_certificate(g: &FullMetric, basis: &InvariantBasis) -> Result<CsiOutcome, LimitError> {
    let values = invariants(g, basis)?;
    let cs = g.coords();
    let text = |inv: Invariant, p: &Polynomial| InvariantValue {
        invariant: inv,
        value: match p.as_constant() {
            Some(c) => format_rational(&c),
            None => p.to_string_with(cs),
        },
    };
    let offending: Vec<InvariantValue> = basis
        .members()
        .iter()
        .zip(&values)
        .filter(|(_, p)| !p.is_constant())
        .map(|(&inv, p)| text(inv, p))
        .collect();
    if offending.is_empty() {
        Ok(CsiOutcome::Constant(CsiCertificate {
            label: CSI_LABEL,
            values: basis
                .members()
                .iter()
                .zip(&values)
                .map(|(&inv, p)| text(inv, p))
                .collect(),
        }))
    } else {
        Ok(CsiOutcome::NotConstant { offending })
    }
}
