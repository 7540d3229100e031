//! Canonical block metrics, their full matrices, class validation, the
//! `v`-transformation that normalizes `a`, and the type I-V classifier.

mod canonical;
pub mod catalog;
mod classify;
mod full;
mod json;
mod normalize;
mod template;
mod validate;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::lattice::LatticeError;

pub use canonical::{assemble, CanonicalMetric};
pub use classify::{classify, TypeFlag, TypeReport};
pub use full::FullMetric;
pub use json::{MetricFile, Point, PointSpec};
pub use normalize::{a_is_closed, first_open_pair, normalize_a, Normalized};
pub use template::{instantiate_template, TemplateSource};
pub use validate::{validate_class, ClassReport, Violation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("in {entry}: {source}")]
    Entry {
        entry: String,
        #[source]
        source: AlgebraError,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not symmetric")]
    NotSymmetric(String),
    #[error("row {row} of a is not closed: d/dv{n} a{row}{m} != d/dv{m} a{row}{n}")]
    NotClosed { row: usize, n: usize, m: usize },
    #[error("a is not triangular up to row permutation: {0}")]
    NotTriangular(String),
    #[error("{component} contains {monomial}, outside its shape")]
    CoefficientOutsideShape { component: String, monomial: String },
    #[error("metric is not in block form: {0}")]
    NotCanonicalForm(String),
    #[error("invalid metric JSON: {0}")]
    Json(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
}
