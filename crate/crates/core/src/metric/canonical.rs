use crate::algebra::{Coord, CoordinateSystem, PolyMatrix, Polynomial, Rational};

use super::{FullMetric, MetricError};

/// Block form `2 du^i (a_ij dv^j + A_ij du^j + B_ia dx^a) + g_ab dx^a dx^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalMetric {
    pub coords: CoordinateSystem,
    /// `k x k`, coefficient of `du^i dv^j`.
    pub a: PolyMatrix,
    /// `k x k` symmetric.
    pub big_a: PolyMatrix,
    /// `k x m`.
    pub b: PolyMatrix,
    /// `m x m` symmetric.
    pub g_trans: PolyMatrix,
}

impl CanonicalMetric {
    pub fn new(
        coords: CoordinateSystem,
        a: PolyMatrix,
        big_a: PolyMatrix,
        b: PolyMatrix,
        g_trans: PolyMatrix,
    ) -> Result<Self, MetricError> {
        let (k, m) = (coords.k(), coords.m());
        let dims = [
            ("a", &a, k, k),
            ("A", &big_a, k, k),
            ("B", &b, k, m),
            ("g_trans", &g_trans, m, m),
        ];
        for (name, mat, r, c) in dims {
            if mat.rows() != r || mat.cols() != c {
                return Err(MetricError::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {r}x{c}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        if !big_a.is_symmetric() {
            return Err(MetricError::NotSymmetric("A".into()));
        }
        if !g_trans.is_symmetric() {
            return Err(MetricError::NotSymmetric("g_trans".into()));
        }
        Ok(Self {
            coords,
            a,
            big_a,
            b,
            g_trans,
        })
    }

    /// `2 du^i dv^i + sum_a eps_a (dx^a)^2` with the given transverse signs.
    pub fn flat(k: usize, signs: &[i64]) -> Result<Self, MetricError> {
        let m = signs.len();
        let coords = CoordinateSystem::new(k, m)?;
        let g = PolyMatrix::from_fn(m, m, |i, j| {
            if i == j {
                Polynomial::constant(Rational::from_integer(signs[i].into()))
            } else {
                Polynomial::zero()
            }
        });
        Self::new(
            coords,
            PolyMatrix::identity(k),
            PolyMatrix::zeros(k, k),
            PolyMatrix::zeros(k, m),
            g,
        )
    }

    pub fn k(&self) -> usize {
        self.coords.k()
    }

    pub fn m(&self) -> usize {
        self.coords.m()
    }

    /// Every component polynomial with a label, in a fixed order.
    pub fn components(&self) -> Vec<(String, &Polynomial)> {
        let (k, m) = (self.k(), self.m());
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                out.push((format!("a{}{}", i + 1, j + 1), self.a.get(i, j)));
            }
        }
        for i in 0..k {
            for j in i..k {
                out.push((format!("A{}{}", i + 1, j + 1), self.big_a.get(i, j)));
            }
        }
        for i in 0..k {
            for a in 0..m {
                out.push((format!("B{}{}", i + 1, a + 1), self.b.get(i, a)));
            }
        }
        for a in 0..m {
            for c in a..m {
                out.push((format!("g{}{}", a + 1, c + 1), self.g_trans.get(a, c)));
            }
        }
        out
    }

    pub fn depends_on_v(&self) -> bool {
        let vs: Vec<usize> = self.coords.v_vars().collect();
        self.components()
            .iter()
            .any(|(_, p)| vs.iter().any(|&v| p.depends_on(v)))
    }
}

/// Full symmetric metric in slot order `(u, x, v)`.
pub fn assemble(cm: &CanonicalMetric) -> Result<FullMetric, MetricError> {
    let cs = &cm.coords;
    let (k, m) = (cs.k(), cs.m());
    let n = cs.dim();
    let mut g = PolyMatrix::zeros(n, n);
    let two = Rational::from_integer(2.into());
    for i in 0..k {
        let ui = cs.slot(Coord::U(i));
        for j in 0..k {
            let uj = cs.slot(Coord::U(j));
            let vj = cs.slot(Coord::V(j));
            g.set(ui, uj, cm.big_a.get(i, j).scale(&two));
            g.set(ui, vj, cm.a.get(i, j).clone());
            g.set(vj, ui, cm.a.get(i, j).clone());
        }
        for a in 0..m {
            let xa = cs.slot(Coord::X(a));
            g.set(ui, xa, cm.b.get(i, a).clone());
            g.set(xa, ui, cm.b.get(i, a).clone());
        }
    }
    for a in 0..m {
        for c in 0..m {
            g.set(
                cs.slot(Coord::X(a)),
                cs.slot(Coord::X(c)),
                cm.g_trans.get(a, c).clone(),
            );
        }
    }
    FullMetric::new(cs.clone(), g)
}
