//! Exact symbolic workbench for degenerate pseudo-Riemannian metrics in
//! Walker-type canonical form.

pub mod algebra;
pub mod curvature;
pub mod lattice;
pub mod limit;
pub mod metric;
