use std::path::PathBuf;

use idegen_core::curvature::CurvatureError;
use idegen_core::lattice::LatticeError;
use idegen_core::limit::LimitError;
use idegen_core::metric::MetricError;
use thiserror::Error;

/// Anything that makes an invocation exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Metric {
        path: PathBuf,
        #[source]
        source: MetricError,
    },
    #[error("{}: invalid certificate: {message}", path.display())]
    Certificate { path: PathBuf, message: String },
    #[error("invalid point: {0}")]
    Point(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    MetricModel(#[from] MetricError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}
