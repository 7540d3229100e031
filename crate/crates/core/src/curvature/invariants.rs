use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, Rational};
use crate::metric::{FullMetric, Point};

use super::{CurvatureError, Geometry, Tensor};

/// Named full contractions of the curvature and its first covariant derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Invariant {
    /// `R`
    R,
    /// `R_{ab} R^{ab}`
    RicSq,
    /// `R_{abcd} R^{abcd}`
    RiemSq,
    /// `R_{;a} R^{;a}`
    DRSq,
    /// `R_{ab;c} R^{ab;c}`
    DRicSq,
    /// `R_{abcd;e} R^{abcd;e}`
    DRiemSq,
}

impl Invariant {
    pub const ALL: [Invariant; 6] = [
        Invariant::R,
        Invariant::RicSq,
        Invariant::RiemSq,
        Invariant::DRSq,
        Invariant::DRicSq,
        Invariant::DRiemSq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::R => "R",
            Invariant::RicSq => "RicSq",
            Invariant::RiemSq => "RiemSq",
            Invariant::DRSq => "DRSq",
            Invariant::DRicSq => "DRicSq",
            Invariant::DRiemSq => "DRiemSq",
        }
    }

    fn needs_derivative(self) -> bool {
        matches!(
            self,
            Invariant::DRSq | Invariant::DRicSq | Invariant::DRiemSq
        )
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Invariant::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| format!("unknown invariant `{s}`"))
    }
}

/// Ordered list of invariants to compute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    members: Vec<Invariant>,
}

impl InvariantBasis {
    pub fn new(members: Vec<Invariant>) -> Self {
        Self { members }
    }

    /// All six scalars of [`Invariant::ALL`].
    pub fn standard() -> Self {
        Self::new(Invariant::ALL.to_vec())
    }

    pub fn members(&self) -> &[Invariant] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Default for InvariantBasis {
    fn default() -> Self {
        Self::standard()
    }
}

/// Every curvature quantity the basis is built from.
#[derive(Clone, Debug)]
pub struct Curvature {
    pub riemann_up: Tensor,
    pub riemann: Tensor,
    pub ricci: Tensor,
    pub scalar: Polynomial,
}

impl Curvature {
    pub fn compute(geo: &Geometry) -> Self {
        let riemann_up = geo.riemann();
        let riemann = geo.lower_first(&riemann_up);
        let ricci = geo.ricci(&riemann_up);
        let scalar = geo.scalar(&ricci);
        Self {
            riemann_up,
            riemann,
            ricci,
            scalar,
        }
    }
}

fn evaluate(geo: &Geometry, basis: &InvariantBasis) -> Vec<Polynomial> {
    let curv = Curvature::compute(geo);
    let derivs = basis.members().iter().any(|i| i.needs_derivative());
    let (d_r, d_ric, d_riem) = if derivs {
        (
            Some(geo.cov_deriv_at(&Tensor::scalar(curv.scalar.clone()).with_dim(geo.dim()), 3)),
            Some(geo.cov_deriv_at(&curv.ricci, 3)),
            Some(geo.cov_deriv_at(&curv.riemann, 3)),
        )
    } else {
        (None, None, None)
    };
    basis
        .members()
        .iter()
        .map(|inv| match inv {
            Invariant::R => curv.scalar.clone(),
            Invariant::RicSq => geo.square_at(&curv.ricci, 2),
            Invariant::RiemSq => geo.square_at(&curv.riemann, 2),
            Invariant::DRSq => geo.square_at(d_r.as_ref().expect("computed"), 3),
            Invariant::DRicSq => geo.square_at(d_ric.as_ref().expect("computed"), 3),
            Invariant::DRiemSq => geo.square_at(d_riem.as_ref().expect("computed"), 3),
        })
        .collect()
}

/// The basis invariants as polynomials in the coordinates.
pub fn invariants(
    g: &FullMetric,
    basis: &InvariantBasis,
) -> Result<Vec<Polynomial>, CurvatureError> {
    let geo = Geometry::new(g)?;
    Ok(evaluate(&geo, basis))
}

/// The basis invariants evaluated at `point`.
///
/// Works in a chart centred at `point` with every product truncated at
/// degree 3, which keeps the constant terms exact while avoiding the full
/// symbolic expansion.
pub fn invariants_at(
    g: &FullMetric,
    basis: &InvariantBasis,
    point: &Point,
) -> Result<Vec<Rational>, CurvatureError> {
    let geo = Geometry::at_point(g, point, 3)?;
    Ok(evaluate(&geo, basis)
        .iter()
        .map(Polynomial::constant_term)
        .collect())
}

/// `R^r_{s m n} == 0` identically.
pub fn is_flat(g: &FullMetric) -> Result<bool, CurvatureError> {
    Ok(Geometry::new(g)?.riemann().is_zero())
}
