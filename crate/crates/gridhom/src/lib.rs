//! Grid homology (combinatorial knot Floer homology) over GF(2), with the
//! full analysis pipeline for diagonal knots: top strata structure, essential
//! square domains and tangle decompositions, auxiliary combinatorial chain
//! complexes, braid-closure grid constructions, and the crossing-exchange
//! unknotting procedure.

pub mod aux_complexes;
pub mod braid;
pub mod cli;
pub mod diagonal;
pub mod error;
pub mod fox;
pub mod gradings;
pub mod grid;
pub mod homology;
pub mod planar;
pub mod poly;
pub mod unknot;

pub use error::{GridError, Result};
pub use grid::{Axis, GridDiagram, StabKind, State};
pub use homology::{BigradedDims, Limits};
pub use poly::LaurentPoly;
