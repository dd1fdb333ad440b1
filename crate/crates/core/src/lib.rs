//! Exact-arithmetic workbench for Lie algebras with inner products and for
//! finite groups with invariant metrics.

pub mod catalog;
pub mod cli;
pub mod exactla;
pub mod finite;
pub mod format;
pub mod invariants;
pub mod lie;
pub mod report;

pub use exactla::{Mat, Rat, Subspace};
pub use finite::FiniteMetricGroup;
pub use invariants::MetricTensor;
pub use lie::LieAlgebra;
