use crate::algebra::{AlgebraError, CoordinateSystem, PolyMatrix, Polynomial, Rational};
use crate::metric::{FullMetric, Point};

use super::{CurvatureError, Tensor, Variance};

/// Metric, inverse and Levi-Civita connection of a chart, optionally with
/// every product truncated at a fixed total degree (exact for the low
/// orders needed to evaluate at the origin of the chart).
#[derive(Clone, Debug)]
pub struct Geometry {
    coords: CoordinateSystem,
    n: usize,
    g: Tensor,
    ginv: Tensor,
    gamma: Tensor,
    trunc: Option<u32>,
}

fn matrix_tensor(m: &PolyMatrix, v: Variance) -> Tensor {
    let n = m.rows();
    let mut t = Tensor::zeros(n, vec![v, v]);
    for i in 0..n {
        for j in 0..n {
            t.set(&[i, j], m.get(i, j).clone());
        }
    }
    t
}

impl Geometry {
    pub fn new(metric: &FullMetric) -> Result<Self, CurvatureError> {
        Self::build(metric.coords().clone(), metric.matrix().clone(), None)
    }

    /// Chart recentred at `point` (coordinates shifted so that `point` is
    /// the origin) with products truncated at `degree`.
    pub fn at_point(
        metric: &FullMetric,
        point: &Point,
        degree: u32,
    ) -> Result<Self, CurvatureError> {
        let shift: Vec<Polynomial> = point
            .values()
            .iter()
            .enumerate()
            .map(|(v, x)| &Polynomial::var(v) + &Polynomial::constant(x.clone()))
            .collect();
        let g = metric
            .matrix()
            .map(|p| p.substitute(|v| Some(shift[v].clone())));
        Self::build(metric.coords().clone(), g, Some(degree))
    }

    fn build(
        coords: CoordinateSystem,
        g: PolyMatrix,
        trunc: Option<u32>,
    ) -> Result<Self, CurvatureError> {
        let n = coords.dim();
        let inv = g.inverse_constdet().map_err(|e| match e {
            AlgebraError::NonConstantDeterminant(d) => CurvatureError::NonConstantDeterminant(d),
            other => CurvatureError::Algebra(other),
        })?;
        let (g, inv) = match trunc {
            Some(d) => (g.map(|p| p.truncate(d)), inv.map(|p| p.truncate(d))),
            None => (g, inv),
        };
        let mut geo = Self {
            coords,
            n,
            g: matrix_tensor(&g, Variance::Down),
            ginv: matrix_tensor(&inv, Variance::Up),
            gamma: Tensor::zeros(n, vec![Variance::Up, Variance::Down, Variance::Down]),
            trunc,
        };
        geo.gamma = geo.christoffel_from_metric();
        Ok(geo)
    }

    pub fn coords(&self) -> &CoordinateSystem {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> &Tensor {
        &self.g
    }

    pub fn inverse(&self) -> &Tensor {
        &self.ginv
    }

    /// `Gamma^l_{m n}`, index order `[l, m, n]`.
    pub fn christoffel(&self) -> &Tensor {
        &self.gamma
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.mul_at(a, b, 0)
    }

    /// Degree kept for a quantity built from `level` derivatives of the metric.
    fn cap(&self, level: u32) -> Option<u32> {
        self.trunc.map(|d| d.saturating_sub(level))
    }

    fn mul_at(&self, a: &Polynomial, b: &Polynomial, level: u32) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        a.mul_truncated(b, self.cap(level))
    }

    fn cut(&self, p: Polynomial, level: u32) -> Polynomial {
        match self.cap(level) {
            Some(d) => p.truncate(d),
            None => p,
        }
    }

    /// Partial derivative along slot `mu`.
    pub fn d(&self, p: &Polynomial, mu: usize) -> Polynomial {
        p.diff(self.coords.slot_var(mu))
    }

    fn christoffel_from_metric(&self) -> Tensor {
        let n = self.n;
        let half = Rational::new(1.into(), 2.into());
        // Gamma_{s m n} = 1/2 (d_m g_{s n} + d_n g_{s m} - d_s g_{m n})
        let mut dg = vec![Polynomial::zero(); n * n * n];
        for c in 0..n {
            for a in 0..n {
                for b in 0..n {
                    dg[(c * n + a) * n + b] = self.d(self.g.get(&[a, b]), c);
                }
            }
        }
        let at = |c: usize, a: usize, b: usize| &dg[(c * n + a) * n + b];
        let mut lower = vec![Polynomial::zero(); n * n * n];
        for s in 0..n {
            for m in 0..n {
                for nn in m..n {
                    let mut p = at(m, s, nn) + at(nn, s, m);
                    p -= at(s, m, nn);
                    let p = p.scale(&half);
                    lower[(s * n + m) * n + nn] = p.clone();
                    lower[(s * n + nn) * n + m] = p;
                }
            }
        }
        let mut gamma = Tensor::zeros(n, vec![Variance::Up, Variance::Down, Variance::Down]);
        for l in 0..n {
            for m in 0..n {
                for nn in m..n {
                    let mut acc = Polynomial::zero();
                    for s in 0..n {
                        let gi = self.ginv.get(&[l, s]);
                        let low = &lower[(s * n + m) * n + nn];
                        if !gi.is_zero() && !low.is_zero() {
                            acc += &self.mul_at(gi, low, 1);
                        }
                    }
                    gamma.set(&[l, nn, m], acc.clone());
                    gamma.set(&[l, m, nn], acc);
                }
            }
        }
        gamma
    }

    /// `R^r_{s m n} = d_m G^r_{n s} - d_n G^r_{m s} + G^r_{m l} G^l_{n s} - G^r_{n l} G^l_{m s}`,
    /// index order `[r, s, m, n]`.
    pub fn riemann(&self) -> Tensor {
        let n = self.n;
        let g = &self.gamma;
        let mut out = Tensor::zeros(
            n,
            vec![Variance::Up, Variance::Down, Variance::Down, Variance::Down],
        );
        for r in 0..n {
            for s in 0..n {
                for m in 0..n {
                    for nn in (m + 1)..n {
                        let mut acc = self.d(g.get(&[r, nn, s]), m);
                        acc -= &self.d(g.get(&[r, m, s]), nn);
                        for l in 0..n {
                            acc += &self.mul_at(g.get(&[r, m, l]), g.get(&[l, nn, s]), 2);
                            acc -= &self.mul_at(g.get(&[r, nn, l]), g.get(&[l, m, s]), 2);
                        }
                        let acc = self.cut(acc, 2);
                        out.set(&[r, s, nn, m], -acc.clone());
                        out.set(&[r, s, m, nn], acc);
                    }
                }
            }
        }
        out
    }

    /// Lowers the first index of `R^r_{s m n}`.
    pub fn lower_first(&self, t: &Tensor) -> Tensor {
        let n = self.n;
        let mut vars = t.variances().to_vec();
        vars[0] = Variance::Down;
        let mut out = Tensor::zeros(n, vars);
        let stride = t.data().len() / n;
        for a in 0..n {
            for rest in 0..stride {
                let mut acc = Polynomial::zero();
                for b in 0..n {
                    let gab = self.g.get(&[a, b]);
                    let tb = &t.data()[b * stride + rest];
                    if !gab.is_zero() && !tb.is_zero() {
                        acc += &self.mul_at(gab, tb, 2);
                    }
                }
                out.data_mut()[a * stride + rest] = acc;
            }
        }
        out
    }

    /// `R_{s n} = R^r_{s r n}`.
    pub fn ricci(&self, riemann: &Tensor) -> Tensor {
        let n = self.n;
        let mut out = Tensor::covariant(n, 2);
        for s in 0..n {
            for nn in 0..n {
                let mut acc = Polynomial::zero();
                for r in 0..n {
                    acc += riemann.get(&[r, s, r, nn]);
                }
                out.set(&[s, nn], acc);
            }
        }
        out
    }

    pub fn scalar(&self, ricci: &Tensor) -> Polynomial {
        let n = self.n;
        let mut acc = Polynomial::zero();
        for a in 0..n {
            for b in 0..n {
                acc += &self.mul_at(self.ginv.get(&[a, b]), ricci.get(&[a, b]), 2);
            }
        }
        acc
    }

    /// `nabla_c T`, with the derivative index appended last.
    pub fn cov_deriv(&self, t: &Tensor) -> Tensor {
        self.cov_deriv_at(t, 0)
    }

    /// [`Geometry::cov_deriv`] for a result built from `level` derivatives
    /// of the metric; only matters for truncated charts.
    pub fn cov_deriv_at(&self, t: &Tensor, level: u32) -> Tensor {
        let n = self.n;
        let rank = t.rank();
        let mut vars = t.variances().to_vec();
        vars.push(Variance::Down);
        let mut out = Tensor::zeros(n, vars);
        let len = t.data().len();
        for flat in 0..len {
            let idx = t.index_of(flat);
            for c in 0..n {
                let mut acc = self.cut(self.d(&t.data()[flat], c), level);
                for (pos, v) in t.variances().iter().enumerate() {
                    let mut other = idx.clone();
                    for l in 0..n {
                        other[pos] = l;
                        let tl = t.get(&other);
                        if tl.is_zero() {
                            continue;
                        }
                        match v {
                            Variance::Up => {
                                acc += &self.mul_at(self.gamma.get(&[idx[pos], c, l]), tl, level);
                            }
                            Variance::Down => {
                                acc -= &self.mul_at(self.gamma.get(&[l, c, idx[pos]]), tl, level);
                            }
                        }
                    }
                }
                let mut full = idx.clone();
                full.push(c);
                debug_assert_eq!(full.len(), rank + 1);
                out.set(&full, acc);
            }
        }
        out
    }

    /// Raises every index of an all-covariant tensor.
    pub fn raise_all(&self, t: &Tensor) -> Tensor {
        self.raise_all_at(t, 0)
    }

    fn raise_all_at(&self, t: &Tensor, level: u32) -> Tensor {
        let n = self.n;
        let mut cur = t.clone();
        for pos in 0..t.rank() {
            let mut vars = cur.variances().to_vec();
            vars[pos] = Variance::Up;
            let mut next = Tensor::zeros(n, vars);
            for flat in 0..cur.data().len() {
                let p = &cur.data()[flat];
                if p.is_zero() {
                    continue;
                }
                let idx = cur.index_of(flat);
                let mut target = idx.clone();
                for a in 0..n {
                    let gi = self.ginv.get(&[a, idx[pos]]);
                    if gi.is_zero() {
                        continue;
                    }
                    target[pos] = a;
                    let prod = self.mul_at(gi, p, level);
                    *next.get_mut(&target) += &prod;
                }
            }
            cur = next;
        }
        cur
    }

    /// `T_{a...} S^{a...}` for two all-covariant tensors of equal rank.
    pub fn contract(&self, t: &Tensor, s: &Tensor) -> Polynomial {
        self.contract_at(t, s, 0)
    }

    pub fn contract_at(&self, t: &Tensor, s: &Tensor, level: u32) -> Polynomial {
        let up = self.raise_all_at(s, level);
        let mut acc = Polynomial::zero();
        for (a, b) in t.data().iter().zip(up.data()) {
            if !a.is_zero() && !b.is_zero() {
                acc += &self.mul_at(a, b, level);
            }
        }
        acc
    }

    /// `T_{a...} T^{a...}`.
    pub fn square(&self, t: &Tensor) -> Polynomial {
        self.contract(t, t)
    }

    pub fn square_at(&self, t: &Tensor, level: u32) -> Polynomial {
        self.contract_at(t, t, level)
    }
}
