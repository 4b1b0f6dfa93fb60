//! Exact combinatorics of graph determinants and graph inverses.
//!
//! The adjacency determinant is computed from perfect 2-matchings, inverse
//! entries from feasible paths, and sign-invertibility is decided either by the
//! general path criterion or by closed-form recognizers for cycles, theta
//! graphs, barbells and graphs of cycle rank at most two. Every combinatorial
//! route has an independent exact linear-algebra counterpart in [`matrix`].

pub mod classify;
pub mod corpus;
pub mod det;
pub mod enumerate;
mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod inverse;
pub mod matrix;
pub mod structure;

pub use error::{Error, Result};
pub use families::{BarbellSpec, ThetaSpec};
pub use graph::{Bipartition, Graph, Subgraph, VertexSet};

/// Exact rational number used for inverse entries.
pub type Rational = num_rational::BigRational;
pub use num_bigint::BigInt;
