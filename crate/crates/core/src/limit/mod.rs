//! Boost pullback limits, invariant agreement, and VSI/CSI certificates.

mod csi;
mod pullback;
mod search;

use thiserror::Error;

use crate::curvature::CurvatureError;
use crate::lattice::LatticeError;
use crate::metric::MetricError;

pub use csi::{csi_certificate, CsiCertificate, CsiOutcome, InvariantValue, CSI_LABEL};
pub use pullback::{
    boost_generator, finite_pullback, graded_terms, invariant_agreement, pullback_limit,
    AgreementReport, AgreementRow, DroppedTerm, LimitOutcome, LimitResult, WeightedTerm,
};
pub use search::{
    candidate_boosts, replay, vsi_search, CertificateJson, ReplayReport, StepJson, VsiCertificate,
    VsiOutcome, VsiStep, MAX_SEARCH_DEPTH, MAX_SEARCH_ENTRY,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    #[error("limit diverges: {component} term {term} has weight {weight}")]
    BlowUp {
        component: String,
        term: String,
        weight: i64,
    },
    #[error("base point must have v = 0")]
    NonZeroVBasePoint,
    #[error("boost has {boost} entries, metric has k = {k}")]
    BoostDimension { boost: usize, k: usize },
    #[error("boost vector is zero")]
    TrivialBoost,
    #[error("point has the wrong number of coordinates")]
    PointDimension,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("search bounds out of range: max depth {max_depth} (at most 6), max entry {max_entry} (1 to 16)")]
    SearchBounds { max_depth: usize, max_entry: u32 },
    #[error("certificate endpoint is not flat")]
    EndpointNotFlat,
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
