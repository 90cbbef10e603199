//! Self-identifying codes and related fault-tolerant identifying codes on
//! finite graphs: verification, existence, exact minimum search, the 3-SAT
//! reduction, cubic-graph sweeps, and grid densities on tori.

pub mod canon;
pub mod codes;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod grids;
pub mod reduction;
pub mod scalar;
pub mod share;
pub mod solver;
pub mod sweep;
pub mod vertex_set;

pub use codes::{CodeSpec, Combiner, Violation};
pub use error::{Error, Result};
pub use graph::Graph;
pub use grids::{GridFamily, TorusSpec};
pub use scalar::Scalar;
pub use solver::{SolveBudget, SolveResult, SolveStatus};
pub use vertex_set::VertexSet;

/// Exact rational used for shares and densities.
pub type Rational = num_rational::Ratio<i64>;
/// Wide rational for sums over large corpora.
pub type Rational128 = num_rational::Ratio<i128>;
