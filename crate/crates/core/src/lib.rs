//! Jacobi sets of piecewise-linear maps and the stratifications they induce.
//!
//! The crate works with abstract simplicial complexes, exact rational
//! coordinates, and finite posets. The main entry points are
//! [`jacobi::jacobi_set`], [`arrangement::build_codomain_stratification`],
//! [`reeb::reeb_graph`] and [`pipeline::cmd_pipeline`].

pub mod arrangement;
pub mod complex;
pub mod geom;
pub mod golden;
pub mod homology;
pub mod jacobi;
pub mod pipeline;
pub mod poset;
pub mod rational;
pub mod reeb;
pub mod union_find;
