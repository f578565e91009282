//! Fiber components, Reeb graphs, and the stratified scaffold of the Reeb
//! space over a codomain stratification.
//!
//! Everything is decided with exact predicates: a top simplex meets a fiber
//! iff the point lies in the convex hull of its vertex images, and two such
//! simplices are in the same component iff they are linked by facets that
//! also meet it.

mod audit;
mod fiber;
mod graph;
mod scaffold;

pub use audit::{fiber_constancy_audit, AuditEntry, AuditReport};
pub use fiber::{fiber_components, FiberComponent, FiberOracle, Probe};
pub use graph::{reeb_graph, ReebEdge, ReebGraph, ReebNode};
pub use scaffold::{
    check_stein_square, reeb_scaffold, Attachment, ReebScaffold, ScaffoldJson, ScaffoldStratum, ScaffoldStratumJson,
    SteinVerdict,
};

use thiserror::Error;

use crate::arrangement::ArrangementError;
use crate::jacobi::JacobiError;
use crate::poset::PosetError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReebError {
    #[error("fiber computations support target dimension 1 or 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("expected a map to R^{expected}, got R^{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("degenerate configuration: {0}")]
    Degeneracy(String),
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}
