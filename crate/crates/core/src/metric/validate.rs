use serde::Serialize;

use crate::algebra::{Monomial, Polynomial};
use crate::lattice::{component_target, BoostVector, ComponentKind};

use super::{CanonicalMetric, MetricError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub component: String,
    pub monomial: String,
    /// `d . b - c > 0`.
    pub excess: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub boost: BoostVector,
    pub pass: bool,
    pub violations: Vec<Violation>,
}

fn v_exponents(m: &Monomial, cm: &CanonicalMetric) -> Vec<u32> {
    cm.coords.v_vars().map(|v| m.exponent(v)).collect()
}

fn v_part_text(d: &[u32]) -> String {
    let parts: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("v{}", i + 1)
            } else {
                format!("v{}^{e}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Checks every `v`-monomial of every block against `d . b <= c`.
pub fn validate_class(cm: &CanonicalMetric, b: &BoostVector) -> Result<ClassReport, MetricError> {
    if b.k() != cm.k() {
        return Err(MetricError::DimensionMismatch(format!(
            "boost has {} entries, metric has k = {}",
            b.k(),
            cm.k()
        )));
    }
    b.require_positive()?;
    let (k, m) = (cm.k(), cm.m());
    let mut violations = Vec::new();
    let mut check = |name: String, p: &Polynomial, target: i64| {
        let mut seen = std::collections::BTreeSet::new();
        for (mono, _) in p.terms() {
            let d = v_exponents(mono, cm);
            let excess = b.dot(&d) - target;
            if excess > 0 && seen.insert(d.clone()) {
                violations.push(Violation {
                    component: name.clone(),
                    monomial: v_part_text(&d),
                    excess,
                });
            }
        }
    };
    for i in 0..k {
        for j in 0..k {
            let c = component_target(b, ComponentKind::UV(i, j))?;
            check(format!("a{}{}", i + 1, j + 1), cm.a.get(i, j), c);
        }
        for j in i..k {
            let c = component_target(b, ComponentKind::UU(i, j))?;
            check(format!("A{}{}", i + 1, j + 1), cm.big_a.get(i, j), c);
        }
        for a in 0..m {
            let c = component_target(b, ComponentKind::UX(i, a))?;
            check(format!("B{}{}", i + 1, a + 1), cm.b.get(i, a), c);
        }
    }
    for a in 0..m {
        for c in a..m {
            check(format!("g{}{}", a + 1, c + 1), cm.g_trans.get(a, c), 0);
        }
    }
    Ok(ClassReport {
        boost: b.clone(),
        pass: violations.is_empty(),
        violations,
    })
}
