//! Exact circuit-walk and circuit-diameter computations on rational
//! polyhedra `{x : Ax = b, Bx <= d}`.
//!
//! Everything is computed over the rationals; there is no floating point in
//! any decision path. The crate is organized bottom-up:
//!
//! - [`exactla`]: rationals, vectors, matrices, rank, kernels.
//! - [`hrep`]: the H-representation, its text format, cones and wedges.
//! - [`vertexgraph`]: vertices, edges, 2-faces, spindles.
//! - [`circuits`]: circuit enumeration and sign predicates.
//! - [`walks`]: maximal steps, certificates, searches and constructive walks.
//! - [`orientations`]: the edge-direction arrangement and its regions.
//! - [`faceanalysis`]: 2-face recession tests and assembled apex walks.
//! - [`context`]: a polytope with lazily cached derived data.
//! - [`data`]: the bundled polytopes.

pub mod circuits;
pub mod context;
pub mod data;
pub mod error;
pub mod exactla;
pub mod faceanalysis;
pub mod hrep;
pub mod orientations;
pub mod rowset;
pub mod vertexgraph;
pub mod walks;

pub use context::Polytope;
pub use error::{Error, Result};
pub use exactla::{Rat, RatMat, RatVec};
pub use hrep::HRep;
pub use rowset::RowSet;
