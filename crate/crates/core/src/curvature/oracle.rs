//! Finite-difference curvature from point evaluations of the metric only.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::algebra::{int, to_f64, Rational};
use crate::metric::{FullMetric, Point};

use super::{CurvatureError, Invariant, InvariantBasis};

type Offset = Vec<i32>;

struct ConnectionAt {
    g: Vec<Rational>,
    ginv: Vec<Rational>,
    /// `[l, m, n]`
    gamma: Vec<Rational>,
}

struct CurvatureAt {
    /// `R_{r s m n}`
    riemann: Vec<Rational>,
    ricci: Vec<Rational>,
    scalar: Rational,
}

struct Oracle<'a> {
    metric: &'a FullMetric,
    base: Vec<Rational>,
    h: Rational,
    n: usize,
    g_cache: HashMap<Offset, Rc<Vec<Rational>>>,
    conn_cache: HashMap<Offset, Rc<ConnectionAt>>,
    curv_cache: HashMap<Offset, Rc<CurvatureAt>>,
}

/// Inverse by Gauss-Jordan elimination; `None` if singular.
fn invert(m: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let mut a = m.to_vec();
    let mut inv = vec![Rational::zero(); n * n];
    for i in 0..n {
        inv[i * n + i] = Rational::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[col * n + col].clone();
        for j in 0..n {
            a[col * n + j] /= &p;
            inv[col * n + j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r * n + col].is_zero() {
                continue;
            }
            let f = a[r * n + col].clone();
            for j in 0..n {
                let (x, y) = (a[col * n + j].clone(), inv[col * n + j].clone());
                a[r * n + j] -= &f * x;
                inv[r * n + j] -= &f * y;
            }
        }
    }
    Some(inv)
}

impl<'a> Oracle<'a> {
    fn shifted(off: &[i32], dir: usize, step: i32) -> Offset {
        let mut o = off.to_vec();
        o[dir] += step;
        o
    }

    /// Four-point central stencil applied to an array-valued function.
    fn stencil<F>(
        &mut self,
        off: &[i32],
        dir: usize,
        mut f: F,
    ) -> Result<Vec<Rational>, CurvatureError>
    where
        F: FnMut(&mut Self, &[i32]) -> Result<Vec<Rational>, CurvatureError>,
    {
        let p2 = f(self, &Self::shifted(off, dir, 2))?;
        let p1 = f(self, &Self::shifted(off, dir, 1))?;
        let m1 = f(self, &Self::shifted(off, dir, -1))?;
        let m2 = f(self, &Self::shifted(off, dir, -2))?;
        let denom = &self.h * int(12);
        Ok((0..p1.len())
            .map(|i| {
                let num = (&p1[i] - &m1[i]) * int(8) - (&p2[i] - &m2[i]);
                num / &denom
            })
            .collect())
    }

    fn metric_at(&mut self, off: &[i32]) -> Result<Rc<Vec<Rational>>, CurvatureError> {
        if let Some(g) = self.g_cache.get(off) {
            return Ok(g.clone());
        }
        let cs = self.metric.coords();
        let mut point = self.base.clone();
        for (slot, &o) in off.iter().enumerate() {
            if o != 0 {
                point[cs.slot_var(slot)] += &self.h * int(o.into());
            }
        }
        let n = self.n;
        let mut g = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                g.push(self.metric.get(a, b).eval(&point)?);
            }
        }
        let g = Rc::new(g);
        self.g_cache.insert(off.to_vec(), g.clone());
        Ok(g)
    }

    fn connection_at(&mut self, off: &[i32]) -> Result<Rc<ConnectionAt>, CurvatureError> {
        if let Some(c) = self.conn_cache.get(off) {
            return Ok(c.clone());
        }
        let n = self.n;
        let g = self.metric_at(off)?;
        let ginv = invert(&g, n).ok_or(CurvatureError::SingularMetricAtPoint)?;
        let mut dg = Vec::with_capacity(n);
        for c in 0..n {
            dg.push(self.stencil(off, c, |o, at| Ok(o.metric_at(at)?.to_vec()))?);
        }
        let half = Rational::new(1.into(), 2.into());
        let mut lower = vec![Rational::zero(); n * n * n];
        for s in 0..n {
            for m in 0..n {
                for q in 0..n {
                    let v = &dg[m][s * n + q] + &dg[q][s * n + m] - &dg[s][m * n + q];
                    lower[(s * n + m) * n + q] = v * &half;
                }
            }
        }
        let mut gamma = vec![Rational::zero(); n * n * n];
        for l in 0..n {
            for m in 0..n {
                for q in 0..n {
                    let mut acc = Rational::zero();
                    for s in 0..n {
                        acc += &ginv[l * n + s] * &lower[(s * n + m) * n + q];
                    }
                    gamma[(l * n + m) * n + q] = acc;
                }
            }
        }
        let conn = Rc::new(ConnectionAt {
            g: g.to_vec(),
            ginv,
            gamma,
        });
        self.conn_cache.insert(off.to_vec(), conn.clone());
        Ok(conn)
    }

    fn curvature_at(&mut self, off: &[i32]) -> Result<Rc<CurvatureAt>, CurvatureError> {
        if let Some(c) = self.curv_cache.get(off) {
            return Ok(c.clone());
        }
        let n = self.n;
        let conn = self.connection_at(off)?;
        let gm = &conn.gamma;
        let mut dgamma = Vec::with_capacity(n);
        for c in 0..n {
            dgamma.push(self.stencil(off, c, |o, at| Ok(o.connection_at(at)?.gamma.clone()))?);
        }
        let gi = |l: usize, m: usize, q: usize| &gm[(l * n + m) * n + q];
        let mut up = vec![Rational::zero(); n * n * n * n];
        for r in 0..n {
            for s in 0..n {
                for m in 0..n {
                    for q in 0..n {
                        let mut acc =
                            &dgamma[m][(r * n + q) * n + s] - &dgamma[q][(r * n + m) * n + s];
                        for l in 0..n {
                            acc += gi(r, m, l) * gi(l, q, s);
                            acc -= gi(r, q, l) * gi(l, m, s);
                        }
                        up[((r * n + s) * n + m) * n + q] = acc;
                    }
                }
            }
        }
        let n3 = n * n * n;
        let mut riemann = vec![Rational::zero(); n * n3];
        for a in 0..n {
            for rest in 0..n3 {
                let mut acc = Rational::zero();
                for b in 0..n {
                    acc += &conn.g[a * n + b] * &up[b * n3 + rest];
                }
                riemann[a * n3 + rest] = acc;
            }
        }
        let mut ricci = vec![Rational::zero(); n * n];
        for s in 0..n {
            for q in 0..n {
                let mut acc = Rational::zero();
                for r in 0..n {
                    acc += &up[((r * n + s) * n + r) * n + q];
                }
                ricci[s * n + q] = acc;
            }
        }
        let mut scalar = Rational::zero();
        for a in 0..n {
            for b in 0..n {
                scalar += &conn.ginv[a * n + b] * &ricci[a * n + b];
            }
        }
        let curv = Rc::new(CurvatureAt {
            riemann,
            ricci,
            scalar,
        });
        self.curv_cache.insert(off.to_vec(), curv.clone());
        Ok(curv)
    }
}

/// Covariant derivative at the base point of an all-covariant tensor,
/// given its values and partial derivatives there.
fn nabla(
    t: &[Rational],
    dt: &[Vec<Rational>],
    rank: usize,
    conn: &ConnectionAt,
    n: usize,
) -> Vec<Rational> {
    let len = t.len();
    let mut out = vec![Rational::zero(); len * n];
    let strides: Vec<usize> = (0..rank).map(|p| n.pow((rank - 1 - p) as u32)).collect();
    for flat in 0..len {
        for c in 0..n {
            let mut acc = dt[c][flat].clone();
            for &stride in &strides {
                let ip = (flat / stride) % n;
                let base = flat - ip * stride;
                for l in 0..n {
                    let tl = &t[base + l * stride];
                    if !tl.is_zero() {
                        acc -= &conn.gamma[(l * n + c) * n + ip] * tl;
                    }
                }
            }
            out[flat * n + c] = acc;
        }
    }
    out
}

/// `T_{a..} T^{a..}` with every index raised by `ginv`.
fn square(t: &[Rational], rank: usize, ginv: &[Rational], n: usize) -> Rational {
    let mut cur = t.to_vec();
    for p in 0..rank {
        let stride = n.pow((rank - 1 - p) as u32);
        let mut next = vec![Rational::zero(); cur.len()];
        for (flat, v) in cur.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let ip = (flat / stride) % n;
            let base = flat - ip * stride;
            for a in 0..n {
                let gi = &ginv[a * n + ip];
                if !gi.is_zero() {
                    next[base + a * stride] += gi * v;
                }
            }
        }
        cur = next;
    }
    t.iter().zip(&cur).map(|(a, b)| a * b).sum()
}

/// Basis invariants at `point` computed by nested central differences
/// (fourth-order stencil, step `h`) of point values of the metric, in exact
/// rational arithmetic, converted to floating point at the end.
pub fn numeric_oracle(
    g: &FullMetric,
    basis: &InvariantBasis,
    point: &Point,
    h: &Rational,
) -> Result<Vec<f64>, CurvatureError> {
    if *h <= Rational::zero() {
        return Err(CurvatureError::InvalidStep);
    }
    let n = g.dim();
    let mut o = Oracle {
        metric: g,
        base: point.values().to_vec(),
        h: h.clone(),
        n,
        g_cache: HashMap::new(),
        conn_cache: HashMap::new(),
        curv_cache: HashMap::new(),
    };
    let origin = vec![0; n];
    let conn = o.connection_at(&origin)?;
    let curv = o.curvature_at(&origin)?;
    let needs = |i: Invariant| basis.members().contains(&i);
    let (mut dr, mut dric, mut driem) = (None, None, None);
    if needs(Invariant::DRSq) || needs(Invariant::DRicSq) || needs(Invariant::DRiemSq) {
        let mut d_s = Vec::with_capacity(n);
        let mut d_ric = Vec::with_capacity(n);
        let mut d_riem = Vec::with_capacity(n);
        for c in 0..n {
            d_s.push(o.stencil(&origin, c, |o, at| {
                Ok(vec![o.curvature_at(at)?.scalar.clone()])
            })?);
            d_ric.push(o.stencil(&origin, c, |o, at| Ok(o.curvature_at(at)?.ricci.clone()))?);
            d_riem.push(o.stencil(&origin, c, |o, at| Ok(o.curvature_at(at)?.riemann.clone()))?);
        }
        dr = Some((0..n).map(|c| d_s[c][0].clone()).collect::<Vec<_>>());
        dric = Some(nabla(&curv.ricci, &d_ric, 2, &conn, n));
        driem = Some(nabla(&curv.riemann, &d_riem, 4, &conn, n));
    }
    let gi = &conn.ginv;
    Ok(basis
        .members()
        .iter()
        .map(|inv| {
            let v = match inv {
                Invariant::R => curv.scalar.clone(),
                Invariant::RicSq => square(&curv.ricci, 2, gi, n),
                Invariant::RiemSq => square(&curv.riemann, 4, gi, n),
                Invariant::DRSq => square(dr.as_ref().expect("computed"), 1, gi, n),
                Invariant::DRicSq => square(dric.as_ref().expect("computed"), 3, gi, n),
                Invariant::DRiemSq => square(driem.as_ref().expect("computed"), 5, gi, n),
            };
            to_f64(&v)
        })
        .collect())
}
