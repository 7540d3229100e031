use std::fmt;

use num_traits::One;

use crate::algebra::{Coord, CoordinateSystem, PolyMatrix, Polynomial, Rational};

use super::{CanonicalMetric, MetricError};

/// Symmetric `n x n` metric, rows and columns in slot order `(u, x, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FullMetric {
    coords: CoordinateSystem,
    g: PolyMatrix,
}

impl FullMetric {
    pub fn new(coords: CoordinateSystem, g: PolyMatrix) -> Result<Self, MetricError> {
        let n = coords.dim();
        if g.rows() != n || g.cols() != n {
            return Err(MetricError::DimensionMismatch(format!(
                "metric is {}x{}, expected {n}x{n}",
                g.rows(),
                g.cols()
            )));
        }
        if !g.is_symmetric() {
            return Err(MetricError::NotSymmetric("metric".into()));
        }
        Ok(Self { coords, g })
    }

    pub fn coords(&self) -> &CoordinateSystem {
        &self.coords
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn get(&self, mu: usize, nu: usize) -> &Polynomial {
        self.g.get(mu, nu)
    }

    /// Total number of monomial terms over the upper triangle.
    pub fn term_count(&self) -> usize {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| self.g.get(i, j).len())
            .sum()
    }

    /// Every entry is a constant polynomial.
    pub fn is_constant(&self) -> bool {
        self.g.entries().iter().all(Polynomial::is_constant)
    }

    /// `g'_{mu nu} = d phi^a/d y^mu  d phi^b/d y^nu  g_ab(phi(y))`, where
    /// `map[var]` is the old variable `var` written in the new ones.
    pub fn pullback(&self, map: &[Polynomial]) -> Result<FullMetric, MetricError> {
        let n = self.dim();
        if map.len() != n {
            return Err(MetricError::DimensionMismatch(format!(
                "map has {} components, expected {n}",
                map.len()
            )));
        }
        let cs = &self.coords;
        let subs = self.g.map(|p| p.substitute(|v| Some(map[v].clone())));
        let jac = PolyMatrix::from_fn(n, n, |alpha, mu| {
            map[cs.slot_var(alpha)].diff(cs.slot_var(mu))
        });
        let g = jac.transpose().mul(&subs)?.mul(&jac)?;
        FullMetric::new(cs.clone(), g)
    }

    /// Recovers the block form; fails unless the `vv` and `xv` blocks vanish.
    pub fn to_canonical(&self) -> Result<CanonicalMetric, MetricError> {
        let cs = &self.coords;
        let (k, m) = (cs.k(), cs.m());
        let s = |c| cs.slot(c);
        for i in 0..k {
            for j in 0..k {
                if !self.get(s(Coord::V(i)), s(Coord::V(j))).is_zero() {
                    return Err(MetricError::NotCanonicalForm(format!(
                        "dv{} dv{} component is nonzero",
                        i + 1,
                        j + 1
                    )));
                }
            }
            for a in 0..m {
                if !self.get(s(Coord::V(i)), s(Coord::X(a))).is_zero() {
                    return Err(MetricError::NotCanonicalForm(format!(
                        "dv{} dx{} component is nonzero",
                        i + 1,
                        a + 1
                    )));
                }
            }
        }
        let half = Rational::new(1.into(), 2.into());
        let a = PolyMatrix::from_fn(k, k, |i, j| {
            self.get(s(Coord::U(i)), s(Coord::V(j))).clone()
        });
        let big_a = PolyMatrix::from_fn(k, k, |i, j| {
            self.get(s(Coord::U(i)), s(Coord::U(j))).scale(&half)
        });
        let b = PolyMatrix::from_fn(k, m, |i, c| {
            self.get(s(Coord::U(i)), s(Coord::X(c))).clone()
        });
        let g = PolyMatrix::from_fn(m, m, |c, d| {
            self.get(s(Coord::X(c)), s(Coord::X(d))).clone()
        });
        CanonicalMetric::new(cs.clone(), a, big_a, b, g)
    }

    fn diff_name(&self, slot: usize) -> String {
        format!("d{}", self.coords.name(self.coords.slot_var(slot)))
    }
}

/// Line element, e.g. `2*du1*dv1 + 2*v2*du1^2`.
impl fmt::Display for FullMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut first = true;
        for i in 0..n {
            for j in i..n {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let coeff = if i == j {
                    p.clone()
                } else {
                    p.scale(&Rational::from_integer(2.into()))
                };
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                let diff = if i == j {
                    format!("{}^2", self.diff_name(i))
                } else {
                    format!("{}*{}", self.diff_name(i), self.diff_name(j))
                };
                match coeff.as_constant() {
                    Some(c) if c.is_one() => f.write_str(&diff)?,
                    _ if coeff.len() == 1 => write!(f, "{}*{diff}", coeff.display(&self.coords))?,
                    _ => write!(f, "({})*{diff}", coeff.display(&self.coords))?,
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
