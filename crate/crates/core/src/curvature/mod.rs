//! Levi-Civita connection, curvature tensors, a fixed basis of curvature
//! invariants, null-form and Killing tests, and a finite-difference oracle.

mod forms;
mod geometry;
mod invariants;
mod oracle;
mod tensor;

use thiserror::Error;

use crate::algebra::{AlgebraError, Polynomial};

pub use forms::{coordinate_field, killing_check, lie_derivative, nabla_f, null_form, NablaF};
pub use geometry::Geometry;
pub use invariants::{invariants, invariants_at, is_flat, Curvature, Invariant, InvariantBasis};
pub use oracle::numeric_oracle;
pub use tensor::{Tensor, Variance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvatureError {
    #[error("metric determinant is not constant")]
    NonConstantDeterminant(Polynomial),
    #[error("nabla F is not proportional to F")]
    WalkerInconsistent,
    #[error("metric is singular at a sample point")]
    SingularMetricAtPoint,
    #[error("finite-difference step must be positive")]
    InvalidStep,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
