use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    format_rational, parse_poly, parse_rational, Coord, CoordinateSystem, PolyMatrix, Polynomial,
    Rational,
};
use crate::lattice::BoostVector;

use super::{CanonicalMetric, MetricError};

/// A point in variable order `(u, v, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    values: Vec<Rational>,
}

impl Point {
    pub fn origin(coords: &CoordinateSystem) -> Self {
        Self {
            values: vec![Rational::zero(); coords.dim()],
        }
    }

    pub fn new(coords: &CoordinateSystem, values: Vec<Rational>) -> Result<Self, MetricError> {
        if values.len() != coords.dim() {
            return Err(MetricError::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                coords.dim(),
                values.len()
            )));
        }
        Ok(Self { values })
    }

    /// Origin with the given `u` values.
    pub fn with_u(coords: &CoordinateSystem, u: &[Rational]) -> Result<Self, MetricError> {
        if u.len() != coords.k() {
            return Err(MetricError::InvalidPoint(format!(
                "expected {} u values, got {}",
                coords.k(),
                u.len()
            )));
        }
        let mut p = Self::origin(coords);
        for (i, x) in u.iter().enumerate() {
            p.values[coords.var(Coord::U(i))] = x.clone();
        }
        Ok(p)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, var: usize) -> &Rational {
        &self.values[var]
    }

    pub fn v_is_zero(&self, coords: &CoordinateSystem) -> bool {
        coords.v_vars().all(|v| self.values[v].is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub u: Vec<String>,
    /// Omitted means zero.
    #[serde(default)]
    pub v: Vec<String>,
    #[serde(default)]
    pub x: Vec<String>,
}

impl PointSpec {
    pub fn to_point(&self, coords: &CoordinateSystem) -> Result<Point, MetricError> {
        let (k, m) = (coords.k(), coords.m());
        let zeros = vec!["0".to_string(); k];
        let v = if self.v.is_empty() { &zeros } else { &self.v };
        if self.u.len() != k || v.len() != k || self.x.len() != m {
            return Err(MetricError::InvalidPoint(format!(
                "point needs {k} u, {k} v and {m} x values"
            )));
        }
        let parse = |s: &String| {
            parse_rational(s)
                .ok_or_else(|| MetricError::InvalidPoint(format!("bad rational `{s}`")))
        };
        let values = self
            .u
            .iter()
            .chain(v)
            .chain(&self.x)
            .map(parse)
            .collect::<Result<Vec<_>, _>>()?;
        Point::new(coords, values)
    }

    pub fn from_point(p: &Point, coords: &CoordinateSystem) -> Self {
        let f = |vars: Vec<usize>| {
            vars.into_iter()
                .map(|v| format_rational(p.get(v)))
                .collect()
        };
        Self {
            u: f(coords.u_vars().collect()),
            v: f(coords.v_vars().collect()),
            x: f(coords.x_vars().collect()),
        }
    }
}

/// On-disk metric description. Polynomials use the text grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub k: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transverse_signature: Option<[usize; 2]>,
    pub a: Vec<Vec<String>>,
    #[serde(rename = "A")]
    pub big_a: Vec<Vec<String>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_trans: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boost: Option<BoostVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointSpec>,
}

fn parse_matrix(
    name: &str,
    rows: &[Vec<String>],
    r: usize,
    c: usize,
    coords: &CoordinateSystem,
) -> Result<PolyMatrix, MetricError> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(MetricError::DimensionMismatch(format!(
            "{name} must be {r}x{c}"
        )));
    }
    let mut out = PolyMatrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let p = parse_poly(text, coords).map_err(|source| MetricError::Entry {
                entry: format!("{name}[{}][{}]", i + 1, j + 1),
                source,
            })?;
            out.set(i, j, p);
        }
    }
    Ok(out)
}

fn print_matrix(m: &PolyMatrix, coords: &CoordinateSystem) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|p| p.to_string_with(coords)).collect())
        .collect()
}

impl MetricFile {
    pub fn parse(text: &str) -> Result<Self, MetricError> {
        serde_json::from_str(text).map_err(|e| MetricError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metric file serializes")
    }

    pub fn to_canonical(&self) -> Result<CanonicalMetric, MetricError> {
        let coords = CoordinateSystem::new(self.k, self.m)?;
        let (k, m) = (self.k, self.m);
        let a = parse_matrix("a", &self.a, k, k, &coords)?;
        let big_a = parse_matrix("A", &self.big_a, k, k, &coords)?;
        let b = match &self.b {
            Some(rows) => parse_matrix("B", rows, k, m, &coords)?,
            None => PolyMatrix::zeros(k, m),
        };
        let g_trans = match (&self.g_trans, self.transverse_signature) {
            (Some(rows), _) => parse_matrix("g_trans", rows, m, m, &coords)?,
            (None, Some([p, q])) if m > 0 => {
                if p + q != m {
                    return Err(MetricError::DimensionMismatch(format!(
                        "transverse_signature ({p},{q}) does not add up to m = {m}"
                    )));
                }
                PolyMatrix::from_fn(m, m, |i, j| match (i == j, i < p) {
                    (true, true) => Polynomial::one(),
                    (true, false) => -Polynomial::one(),
                    _ => Polynomial::zero(),
                })
            }
            (None, _) => PolyMatrix::identity(m),
        };
        CanonicalMetric::new(coords, a, big_a, b, g_trans)
    }

    pub fn point(&self, coords: &CoordinateSystem) -> Result<Option<Point>, MetricError> {
        self.point.as_ref().map(|p| p.to_point(coords)).transpose()
    }

    pub fn from_canonical(cm: &CanonicalMetric) -> Self {
        let cs = &cm.coords;
        Self {
            k: cs.k(),
            m: cs.m(),
            transverse_signature: None,
            a: print_matrix(&cm.a, cs),
            big_a: print_matrix(&cm.big_a, cs),
            b: (cs.m() > 0).then(|| print_matrix(&cm.b, cs)),
            g_trans: (cs.m() > 0).then(|| print_matrix(&cm.g_trans, cs)),
            boost: None,
            point: None,
        }
    }
}
