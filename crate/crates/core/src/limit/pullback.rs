use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{
    format_rational, Coord, CoordinateSystem, Monomial, PolyMatrix, Polynomial, Rational,
};
use crate::curvature::{invariants_at, Invariant, InvariantBasis};
use crate::lattice::{term_weight, BoostVector, DiffPair, GradedTerm};
use crate::metric::{FullMetric, Point};

use super::LimitError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitOutcome {
    Converged(FullMetric),
    /// First term with positive weight.
    BlowUp {
        component: String,
        term: String,
        weight: i64,
    },
    /// Every term already has weight 0.
    Unchanged,
}

/// A term removed by the limit, written in the chart centred at the base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DroppedTerm {
    pub component: String,
    pub term: String,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub outcome: LimitOutcome,
    pub point: Point,
    pub boost: BoostVector,
    pub dropped: Vec<DroppedTerm>,
}

impl LimitResult {
    /// The limit metric: the converged metric, or the input when unchanged.
    pub fn metric<'a>(&'a self, input: &'a FullMetric) -> Result<&'a FullMetric, LimitError> {
        match &self.outcome {
            LimitOutcome::Converged(g) => Ok(g),
            LimitOutcome::Unchanged => Ok(input),
            LimitOutcome::BlowUp {
                component,
                term,
                weight,
            } => Err(LimitError::BlowUp {
                component: component.clone(),
                term: term.clone(),
                weight: *weight,
            }),
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self.outcome, LimitOutcome::Converged(_))
    }
}

fn check_inputs(g: &FullMetric, b: &BoostVector, p: &Point) -> Result<(), LimitError> {
    let cs = g.coords();
    if b.k() != cs.k() {
        return Err(LimitError::BoostDimension {
            boost: b.k(),
            k: cs.k(),
        });
    }
    if b.is_trivial() {
        return Err(LimitError::TrivialBoost);
    }
    if p.values().len() != cs.dim() {
        return Err(LimitError::PointDimension);
    }
    if !p.v_is_zero(cs) {
        return Err(LimitError::NonZeroVBasePoint);
    }
    Ok(())
}

/// `u_i -> u_i + sign * u0_i` in boosted directions.
fn shift_u(
    p: &Polynomial,
    cs: &CoordinateSystem,
    b: &BoostVector,
    point: &Point,
    sign: i64,
) -> Polynomial {
    p.substitute(|v| match cs.coord(v) {
        Coord::U(i) if b.get(i) > 0 && !point.get(v).is_zero() => {
            let c = point.get(v) * Rational::from_integer(sign.into());
            Some(&Polynomial::var(v) + &Polynomial::constant(c))
        }
        _ => None,
    })
}

fn graded(cs: &CoordinateSystem, mono: &Monomial, diff: DiffPair) -> GradedTerm {
    GradedTerm {
        v_exponents: (0..cs.k())
            .map(|i| mono.exponent(cs.var(Coord::V(i))))
            .collect(),
        u_exponents: (0..cs.k())
            .map(|i| mono.exponent(cs.var(Coord::U(i))))
            .collect(),
        diff,
    }
}

fn component_label(cs: &CoordinateSystem, mu: usize, nu: usize) -> String {
    let name = |s: usize| cs.name(cs.slot_var(s)).to_string();
    format!("d{} d{}", name(mu), name(nu))
}

/// `(mu, nu, monomial, coefficient, weight)` of one metric term.
pub type WeightedTerm = (usize, usize, Monomial, Rational, i64);

/// Weight of every term of the metric recentred at `p`, over the upper triangle.
pub fn graded_terms(
    g: &FullMetric,
    b: &BoostVector,
    p: &Point,
) -> Result<Vec<WeightedTerm>, LimitError> {
    check_inputs(g, b, p)?;
    let cs = g.coords();
    let n = cs.dim();
    let mut out = Vec::new();
    for mu in 0..n {
        for nu in mu..n {
            let entry = shift_u(g.get(mu, nu), cs, b, p, 1);
            let diff = DiffPair(cs.slot_coord(mu), cs.slot_coord(nu));
            for (mono, c) in entry.terms() {
                let w = term_weight(&graded(cs, mono, diff), b)?;
                out.push((mu, nu, mono.clone(), c.clone(), w));
            }
        }
    }
    Ok(out)
}

/// Limit of the boost pullback about `p`: terms of negative weight drop
/// out, weight-0 terms survive, any positive weight makes it diverge.
pub fn pullback_limit(
    g: &FullMetric,
    b: &BoostVector,
    p: &Point,
) -> Result<LimitResult, LimitError> {
    let cs = g.coords();
    let n = cs.dim();
    let terms = graded_terms(g, b, p)?;
    let mut kept = PolyMatrix::zeros(n, n);
    let mut dropped = Vec::new();
    for (mu, nu, mono, c, w) in terms {
        let term = Polynomial::term(mono, c);
        if w > 0 {
            return Ok(LimitResult {
                outcome: LimitOutcome::BlowUp {
                    component: component_label(cs, mu, nu),
                    term: term.to_string_with(cs),
                    weight: w,
                },
                point: p.clone(),
                boost: b.clone(),
                dropped,
            });
        }
        if w < 0 {
            dropped.push(DroppedTerm {
                component: component_label(cs, mu, nu),
                term: term.to_string_with(cs),
                weight: w,
            });
        } else {
            let mut e = kept.get(mu, nu).clone();
            e += &term;
            kept.set(mu, nu, e);
        }
    }
    let outcome = if dropped.is_empty() {
        LimitOutcome::Unchanged
    } else {
        let m = PolyMatrix::from_fn(n, n, |mu, nu| {
            let (a, c) = if mu <= nu { (mu, nu) } else { (nu, mu) };
            shift_u(kept.get(a, c), cs, b, p, -1)
        });
        LimitOutcome::Converged(FullMetric::new(cs.clone(), m)?)
    };
    Ok(LimitResult {
        outcome,
        point: p.clone(),
        boost: b.clone(),
        dropped,
    })
}

/// Pullback under `u_i -> u0_i + s^{b_i} (u_i - u0_i)`, `v_i -> s^{-b_i} v_i`.
/// A term of weight `w` picks up `s^{-w}`, so the limit is `s -> 0`.
pub fn finite_pullback(
    g: &FullMetric,
    b: &BoostVector,
    s: &Rational,
    p: &Point,
) -> Result<FullMetric, LimitError> {
    check_inputs(g, b, p)?;
    if s.is_zero() {
        return Err(LimitError::ZeroScale);
    }
    let cs = g.coords();
    let map: Vec<Polynomial> = (0..cs.dim())
        .map(|v| match cs.coord(v) {
            Coord::U(i) => {
                let f = num_traits::pow(s.clone(), b.get(i) as usize);
                let u0 = Polynomial::constant(p.get(v).clone());
                &u0 + &(&Polynomial::var(v) - &u0).scale(&f)
            }
            Coord::V(i) => {
                let f = num_traits::pow(s.recip(), b.get(i) as usize);
                Polynomial::var(v).scale(&f)
            }
            Coord::X(_) => Polynomial::var(v),
        })
        .collect();
    Ok(g.pullback(&map)?)
}

/// `X = sum_i b_i ((u_i - u0_i) d/du_i - v_i d/dv_i)`, slot order.
pub fn boost_generator(cs: &CoordinateSystem, b: &BoostVector, p: &Point) -> Vec<Polynomial> {
    let mut x = vec![Polynomial::zero(); cs.dim()];
    for i in 0..cs.k().min(b.k()) {
        let l = Rational::from_integer(b.get(i).into());
        let u = cs.var(Coord::U(i));
        let v = cs.var(Coord::V(i));
        let du = &Polynomial::var(u) - &Polynomial::constant(p.get(u).clone());
        x[cs.slot(Coord::U(i))] = du.scale(&l);
        x[cs.slot(Coord::V(i))] = Polynomial::var(v).scale(&-l);
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementRow {
    pub invariant: Invariant,
    pub original: String,
    pub limit: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub boost: BoostVector,
    pub converged: bool,
    pub rows: Vec<AgreementRow>,
    pub pass: bool,
}

/// Compares every basis invariant of `g` and of its limit at `p`.
pub fn invariant_agreement(
    g: &FullMetric,
    b: &BoostVector,
    p: &Point,
    basis: &InvariantBasis,
) -> Result<AgreementReport, LimitError> {
    let lim = pullback_limit(g, b, p)?;
    let g0 = lim.metric(g)?;
    let lhs = invariants_at(g, basis, p)?;
    let rhs = invariants_at(g0, basis, p)?;
    let rows: Vec<AgreementRow> = basis
        .members()
        .iter()
        .zip(lhs.iter().zip(&rhs))
        .map(|(&inv, (l, r))| AgreementRow {
            invariant: inv,
            original: format_rational(l),
            limit: format_rational(r),
            equal: l == r,
        })
        .collect();
    Ok(AgreementReport {
        boost: b.clone(),
        converged: lim.is_converged(),
        pass: rows.iter().all(|r| r.equal),
        rows,
    })
}
