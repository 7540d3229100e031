use thiserror::Error;

use super::Polynomial;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },
    #[error("no value supplied for coordinate `{0}`")]
    MissingCoordinate(String),
    #[error("determinant is not a constant polynomial")]
    NonConstantDeterminant(Polynomial),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid coordinate system: {0}")]
    InvalidCoordinates(String),
}
