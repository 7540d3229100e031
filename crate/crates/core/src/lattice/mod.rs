//! Boost vectors, boost-weight grading and the lattice constraint
//! `d . b <= c` that fixes the admissible `v`-polynomials of each metric
//! component.

mod appendix;
mod boost;
mod shapes;
mod weight;

use thiserror::Error;

pub use appendix::{
    appendix_b_report, lhs_text, AppendixEntry, AppendixReport, AppendixStatus, Equality,
    MAX_APPENDIX_K,
};
pub use boost::{enumerate_boost_vectors, BoostVector, MAX_ENUMERATION_K};
pub use shapes::{
    component_target, shape_tables, solve_generators, AEntry, ComponentKind, MonomialShapeSet,
    ShapeTables,
};
pub use weight::{term_weight, DiffPair, GradedTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("k = {0} is out of range")]
    KOutOfRange(usize),
    #[error("boost entry {index} is zero; move that null pair to the transverse block first")]
    ZeroBoostEntry { index: usize },
    #[error("index {index} exceeds k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("cannot parse boost vector `{0}`")]
    BadBoost(String),
}
