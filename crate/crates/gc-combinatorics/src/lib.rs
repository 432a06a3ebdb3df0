//! Combinatorics of the Gelfand-Cetlin polytope of Gr(2,n): ladder diagrams,
//! Lagrangian faces, monotone positions, pair index sets and n-gon
//! subdivisions attached to charts.

pub mod error;
pub mod ladder;
pub mod pairs;
pub mod polytope;

pub use error::GcError;
pub use ladder::{Block, Edge, EdgeMask, FaceClass, Ladder};
pub use pairs::{chart_subdivision, index_sets, validate_pairs, Cell, PairSet, PolygonSubdivision};
