use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BoostVector, LatticeError};

/// Metric component addressed by the constraint solver, 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    /// `a_ij`, coefficient of `du^i dv^j`.
    UV(usize, usize),
    /// `A_ij`, coefficient of `du^i du^j`.
    UU(usize, usize),
    /// `B_ia`, coefficient of `du^i dx^a`.
    UX(usize, usize),
}

impl ComponentKind {
    pub fn letter(&self) -> &'static str {
        match self {
            ComponentKind::UV(..) => "a",
            ComponentKind::UU(..) => "A",
            ComponentKind::UX(..) => "B",
        }
    }

    pub fn indices(&self) -> (usize, usize) {
        match *self {
            ComponentKind::UV(i, j) | ComponentKind::UU(i, j) | ComponentKind::UX(i, j) => (i, j),
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.indices();
        match self {
            ComponentKind::UX(..) => write!(f, "B{}", i + 1),
            _ => write!(f, "{}{}{}", self.letter(), i + 1, j + 1),
        }
    }
}

/// Right-hand side `c` of `d . b = c` for one component.
pub fn component_target(b: &BoostVector, comp: ComponentKind) -> Result<i64, LatticeError> {
    b.require_positive()?;
    let check = |i: usize| {
        if i < b.k() {
            Ok(b.get(i))
        } else {
            Err(LatticeError::IndexOutOfRange {
                index: i + 1,
                k: b.k(),
            })
        }
    };
    Ok(match comp {
        ComponentKind::UU(i, j) => check(i)? + check(j)?,
        ComponentKind::UV(i, j) => check(i)? - check(j)?,
        ComponentKind::UX(i, _) => check(i)?,
    })
}

/// Maximal v-exponent vectors `d` with `d . b = c`; a monomial `v^d` is
/// admissible when `d . b <= c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialShapeSet {
    pub boost: BoostVector,
    pub target: i64,
    pub generators: Vec<Vec<u32>>,
}

impl MonomialShapeSet {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, d: &[u32]) -> bool {
        self.target >= 0 && self.boost.dot(d) <= self.target
    }

    /// Every admissible exponent vector, in the same order as the generators.
    pub fn downward_closure(&self) -> Vec<Vec<u32>> {
        all_with(&self.boost, self.target, |_| true)
    }

    /// Bracket notation over names `v1..vk`, e.g. `[v1^2,v2]`.
    pub fn bracket(&self) -> String {
        bracket(&self.generators)
    }
}

pub(crate) fn bracket(generators: &[Vec<u32>]) -> String {
    let items: Vec<String> = generators.iter().map(|d| monomial_text(d)).collect();
    format!("[{}]", items.join(","))
}

pub(crate) fn monomial_text(d: &[u32]) -> String {
    let parts: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("v{}", i + 1)
            } else {
                format!("v{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Exponent vectors `d >= 0` with `d . b <= c` (or `== c` when `exact`),
/// ordered lexicographically on `(d_k, ..., d_1)`.
fn all_with<F: Fn(i64) -> bool>(b: &BoostVector, c: i64, accept_rest: F) -> Vec<Vec<u32>> {
    let k = b.k();
    let mut out = Vec::new();
    if c < 0 || k == 0 {
        return out;
    }
    let mut d = vec![0u32; k];
    fn rec<F: Fn(i64) -> bool>(
        b: &BoostVector,
        pos: usize,
        rest: i64,
        d: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        accept_rest: &F,
    ) {
        let bi = b.get(pos);
        let max = rest / bi;
        for e in 0..=max {
            d[pos] = e as u32;
            let r = rest - e * bi;
            if pos == 0 {
                if accept_rest(r) {
                    out.push(d.clone());
                }
            } else {
                rec(b, pos - 1, r, d, out, accept_rest);
            }
        }
        d[pos] = 0;
    }
    rec(b, k - 1, c, &mut d, &mut out, &accept_rest);
    out
}

/// All non-negative solutions of `d . b = c`.
pub fn solve_generators(b: &BoostVector, c: i64) -> Result<MonomialShapeSet, LatticeError> {
    b.require_positive()?;
    Ok(MonomialShapeSet {
        boost: b.clone(),
        target: c,
        generators: all_with(b, c, |r| r == 0),
    })
}

/// Entry of the normalized `a` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "generators", rename_all = "lowercase")]
pub enum AEntry {
    Zero,
    One,
    Bracket(Vec<Vec<u32>>),
}

impl fmt::Display for AEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AEntry::Zero => f.write_str("0"),
            AEntry::One => f.write_str("1"),
            AEntry::Bracket(g) => f.write_str(&bracket(g)),
        }
    }
}

/// Shapes of every block for one boost vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeTables {
    pub boost: BoostVector,
    pub a_raw: Vec<Vec<MonomialShapeSet>>,
    pub a: Vec<Vec<AEntry>>,
    #[serde(rename = "A")]
    pub a_sym: Vec<Vec<MonomialShapeSet>>,
    #[serde(rename = "B")]
    pub b: Vec<MonomialShapeSet>,
    /// Off-diagonal `(i, j)` with `b_i = b_j`: constant `a_ij`, removable
    /// by a constant linear change of the `v`s.
    pub absorbable: Vec<(usize, usize)>,
}

pub fn shape_tables(b: &BoostVector) -> Result<ShapeTables, LatticeError> {
    b.require_positive()?;
    let k = b.k();
    let solve = |comp| solve_generators(b, component_target(b, comp)?);
    let mut a_raw = Vec::with_capacity(k);
    let mut a_sym = Vec::with_capacity(k);
    let mut a = Vec::with_capacity(k);
    let mut b_row = Vec::with_capacity(k);
    let mut absorbable = Vec::new();
    for i in 0..k {
        let mut raw_row = Vec::with_capacity(k);
        let mut sym_row = Vec::with_capacity(k);
        let mut norm_row = Vec::with_capacity(k);
        for j in 0..k {
            let raw = solve(ComponentKind::UV(i, j))?;
            sym_row.push(solve(ComponentKind::UU(i, j))?);
            if i != j && b.get(i) == b.get(j) {
                absorbable.push((i, j));
            }
            norm_row.push(if i == j {
                AEntry::One
            } else if i < j {
                AEntry::Zero
            } else {
                normalize_lower(&raw, j)
            });
            raw_row.push(raw);
        }
        b_row.push(solve(ComponentKind::UX(i, 0))?);
        a_raw.push(raw_row);
        a_sym.push(sym_row);
        a.push(norm_row);
    }
    Ok(ShapeTables {
        boost: b.clone(),
        a_raw,
        a,
        a_sym,
        b: b_row,
        absorbable,
    })
}

/// Removes from the admissible `a_ij dv^j` terms those that are exact on
/// their own (pure powers of `v_j`) and keeps the maximal survivors.
fn normalize_lower(raw: &MonomialShapeSet, j: usize) -> AEntry {
    let rest: Vec<Vec<u32>> = raw
        .downward_closure()
        .into_iter()
        .filter(|d| d.iter().enumerate().any(|(l, &e)| l != j && e > 0))
        .collect();
    let maximal: Vec<Vec<u32>> = rest
        .iter()
        .filter(|d| {
            !rest
                .iter()
                .any(|o| o != *d && o.iter().zip(d.iter()).all(|(x, y)| x >= y))
        })
        .cloned()
        .collect();
    if maximal.is_empty() {
        AEntry::Zero
    } else {
        AEntry::Bracket(maximal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BoostVector {
        s.parse().unwrap()
    }

    #[test]
    fn targets() {
        let b124 = b("1,2,4");
        assert_eq!(component_target(&b124, ComponentKind::UU(0, 0)).unwrap(), 2);
        assert_eq!(component_target(&b124, ComponentKind::UU(2, 2)).unwrap(), 8);
        assert_eq!(component_target(&b124, ComponentKind::UV(2, 0)).unwrap(), 3);
        assert_eq!(
            component_target(&b124, ComponentKind::UV(0, 1)).unwrap(),
            -1
        );
        assert_eq!(
            component_target(&b("0,1"), ComponentKind::UU(0, 0)),
            Err(LatticeError::ZeroBoostEntry { index: 1 })
        );
    }

    #[test]
    fn empty_and_trivial_shapes() {
        assert!(solve_generators(&b("1,2"), -1).unwrap().is_empty());
        assert_eq!(
            solve_generators(&b("1,2"), 0).unwrap().generators,
            vec![vec![0, 0]]
        );
    }

    #[test]
    fn closure_membership() {
        let s = solve_generators(&b("1,2,4"), 3).unwrap();
        assert_eq!(s.bracket(), "[v1^3,v1*v2]");
        assert!(s.contains(&[1, 0, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.downward_closure().len(), 6);
    }
}
