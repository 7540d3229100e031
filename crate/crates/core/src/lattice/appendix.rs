use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{component_target, enumerate_boost_vectors, BoostVector, ComponentKind, LatticeError};

/// One group of `A_ij` components sharing the same equality `d . b = c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equality {
    /// 1-based `(i, j)` with `i <= j`.
    pub components: Vec<(usize, usize)>,
    pub target: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AppendixStatus {
    NonDegenerate,
    Reduces { k: usize, boost: BoostVector },
    Equalities { equalities: Vec<Equality> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixEntry {
    pub index: usize,
    pub boost: BoostVector,
    pub status: AppendixStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub k: usize,
    pub entries: Vec<AppendixEntry>,
}

pub const MAX_APPENDIX_K: usize = 4;

/// The `A_ij` equalities for every canonical boost vector of size `k`.
pub fn appendix_b_report(k: usize) -> Result<AppendixReport, LatticeError> {
    if k == 0 || k > MAX_APPENDIX_K {
        return Err(LatticeError::KOutOfRange(k));
    }
    let mut entries = Vec::new();
    for (n, b) in enumerate_boost_vectors(k)?.into_iter().enumerate() {
        let status = if b.is_trivial() {
            AppendixStatus::NonDegenerate
        } else if b.entries()[0] == 0 {
            AppendixStatus::Reduces {
                k: k - 1,
                boost: BoostVector::new(b.entries()[1..].to_vec()),
            }
        } else {
            let mut groups: Vec<Equality> = Vec::new();
            for i in 0..k {
                for j in i..k {
                    let c = component_target(&b, ComponentKind::UU(i, j))?;
                    match groups.iter_mut().find(|g| g.target == c) {
                        Some(g) => g.components.push((i + 1, j + 1)),
                        None => groups.push(Equality {
                            components: vec![(i + 1, j + 1)],
                            target: c,
                        }),
                    }
                }
            }
            groups.sort_by_key(|g| g.target);
            AppendixStatus::Equalities { equalities: groups }
        };
        entries.push(AppendixEntry {
            index: n + 1,
            boost: b,
            status,
        });
    }
    Ok(AppendixReport { k, entries })
}

/// Left-hand side `d1 + 2d2 + ...` for a boost vector.
pub fn lhs_text(b: &BoostVector) -> String {
    b.entries()
        .iter()
        .enumerate()
        .map(|(i, &n)| match n {
            1 => format!("d{}", i + 1),
            n => format!("{n}d{}", i + 1),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl AppendixReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k = {}", self.k);
        for e in &self.entries {
            let _ = write!(out, "{:>3}. {}", e.index, e.boost);
            match &e.status {
                AppendixStatus::NonDegenerate => out.push_str("  non-degenerate\n"),
                AppendixStatus::Reduces { k, boost } => {
                    let _ = writeln!(out, "  reduces to k = {k} case {boost}, indices shifted");
                }
                AppendixStatus::Equalities { equalities } => {
                    out.push('\n');
                    let lhs = lhs_text(&e.boost);
                    for g in equalities {
                        let names: Vec<String> = g
                            .components
                            .iter()
                            .map(|(i, j)| format!("A{i}{j}"))
                            .collect();
                        let _ = writeln!(out, "       {}: {lhs} = {}", names.join(", "), g.target);
                    }
                }
            }
        }
        out
    }
}
