//! Exact symbolic computations for the degeneration `xyzw + t f = 0` of
//! quartic surfaces in P³: the singular locus of the total space, curves on
//! the central fiber described as graphs, first-order lifting obstructions
//! at nodes, and grafting constructions of curves of higher degree.

pub mod central_fiber;
pub mod chart;
pub mod curve_graph;
pub mod error;
pub mod fixtures;
pub mod graft;
pub mod linalg;
pub mod obstruction;
mod parse;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Scalar, Var};
