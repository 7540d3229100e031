//! Exact rational and sparse multivariate polynomial arithmetic.
//!
//! Everything in the symbolic core is built on [`Polynomial`]: a sparse map
//! from [`Monomial`] to exact [`Rational`] coefficients, kept in canonical
//! graded-lexicographic order so that structural equality is mathematical
//! equality.

mod coords;
mod error;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod rational;

pub use coords::{Coord, CoordinateSystem};
pub use error::AlgebraError;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{DisplayPoly, Polynomial};
pub use rational::{format_rational, int, parse_rational, rat, to_f64, Rational};
