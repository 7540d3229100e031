use crate::algebra::{Coord, CoordinateSystem, PolyMatrix, Polynomial, Rational};

use super::{CanonicalMetric, MetricError};

/// Result of [`normalize_a`]: the metric in the new chart together with
/// both directions of the coordinate change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub metric: CanonicalMetric,
    /// `new v_i = forward[i]`, in the old variables.
    pub forward: Vec<Polynomial>,
    /// Full variable map old -> new: entry `var` is the old variable
    /// written in the new ones (identity on `u` and `x`).
    pub inverse: Vec<Polynomial>,
}

/// Row `i` of `a` is closed as a 1-form in the `v`s.
pub fn first_open_pair(cm: &CanonicalMetric) -> Option<(usize, usize, usize)> {
    let cs = &cm.coords;
    let k = cs.k();
    for i in 0..k {
        for n in 0..k {
            for m in (n + 1)..k {
                let lhs = cm.a.get(i, m).diff(cs.var(Coord::V(n)));
                let rhs = cm.a.get(i, n).diff(cs.var(Coord::V(m)));
                if lhs != rhs {
                    return Some((i, n, m));
                }
            }
        }
    }
    None
}

pub fn a_is_closed(cm: &CanonicalMetric) -> bool {
    first_open_pair(cm).is_none()
}

/// `f` with `d_v f = sum_m a_m dv^m`, for a closed row.
fn potential(row: &[Polynomial], cs: &CoordinateSystem) -> Polynomial {
    let vs: Vec<usize> = cs.v_vars().collect();
    let mut f = Polynomial::zero();
    for (m, p) in row.iter().enumerate() {
        for (mono, c) in p.terms() {
            let deg = mono.degree_in(&vs);
            let scale = c / Rational::from_integer((deg + 1).into());
            f += &Polynomial::term(mono.mul(&crate::algebra::Monomial::var(vs[m])), scale);
        }
    }
    f
}

/// Pivot order `(row, v index, pivot constant)` for a triangular `a`.
fn pivots(cm: &CanonicalMetric) -> Result<Vec<(usize, usize, Rational)>, MetricError> {
    let cs = &cm.coords;
    let k = cs.k();
    let mut done_rows = vec![false; k];
    let mut done_vars = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let mut found = None;
        'rows: for i in (0..k).filter(|&i| !done_rows[i]) {
            let mut pivot = None;
            for m in 0..k {
                let p = cm.a.get(i, m);
                if done_vars[m] {
                    let only_done = p.vars().into_iter().all(|v| match cs.coord(v) {
                        Coord::V(q) => done_vars[q],
                        _ => true,
                    });
                    if !only_done {
                        continue 'rows;
                    }
                } else if !p.is_zero() {
                    match (p.as_constant(), &pivot) {
                        (Some(c), None) => pivot = Some((m, c)),
                        _ => continue 'rows,
                    }
                }
            }
            if let Some((m, c)) = pivot {
                found = Some((i, m, c));
                break;
            }
        }
        let Some((i, m, c)) = found else {
            return Err(MetricError::NotTriangular(
                "no row of a has a single constant pivot among the remaining v's".into(),
            ));
        };
        done_rows[i] = true;
        done_vars[m] = true;
        order.push((i, m, c));
    }
    Ok(order)
}

/// Applies `v~_i = f_i(u, x, v)` with `d_v f_i = a_im dv^m`, bringing `a` to
/// the identity and updating `A`, `B`, `g_trans` so that the line element
/// is unchanged.
pub fn normalize_a(cm: &CanonicalMetric) -> Result<Normalized, MetricError> {
    if let Some((row, n, m)) = first_open_pair(cm) {
        return Err(MetricError::NotClosed {
            row: row + 1,
            n: n + 1,
            m: m + 1,
        });
    }
    let cs = &cm.coords;
    let (k, mm) = (cs.k(), cs.m());
    let order = pivots(cm)?;
    let forward: Vec<Polynomial> = (0..k).map(|i| potential(cm.a.row(i), cs)).collect();

    // h_p: old v_p in terms of new variables.
    let mut h: Vec<Option<Polynomial>> = vec![None; k];
    for (i, p, c) in &order {
        let vp = cs.var(Coord::V(*p));
        let rest = &forward[*i] - &Polynomial::var(vp).scale(c);
        let rest = rest.substitute(|v| match cs.coord(v) {
            Coord::V(q) => h[q].clone(),
            _ => None,
        });
        let new_vi = Polynomial::var(cs.var(Coord::V(*i)));
        h[*p] = Some((&new_vi - &rest).scale(&c.recip()));
    }
    let h: Vec<Polynomial> = h.into_iter().map(|x| x.expect("every v pivoted")).collect();
    let to_new = |p: &Polynomial| {
        p.substitute(|v| match cs.coord(v) {
            Coord::V(q) => Some(h[q].clone()),
            _ => None,
        })
    };

    let half = Rational::new(1.into(), 2.into());
    let big_a = PolyMatrix::from_fn(k, k, |i, n| {
        let du_n = forward[i].diff(cs.var(Coord::U(n)));
        let du_i = forward[n].diff(cs.var(Coord::U(i)));
        to_new(&(cm.big_a.get(i, n) - &(&du_n + &du_i).scale(&half)))
    });
    let b = PolyMatrix::from_fn(k, mm, |i, a| {
        to_new(&(cm.b.get(i, a) - &forward[i].diff(cs.var(Coord::X(a)))))
    });
    let g_trans = cm.g_trans.map(to_new);
    let metric = CanonicalMetric::new(cs.clone(), PolyMatrix::identity(k), big_a, b, g_trans)?;

    let inverse = (0..cs.dim())
        .map(|v| match cs.coord(v) {
            Coord::V(q) => h[q].clone(),
            _ => Polynomial::var(v),
        })
        .collect();
    Ok(Normalized {
        metric,
        forward,
        inverse,
    })
}
