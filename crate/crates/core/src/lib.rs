//! Exact invariants of fusion rings, Witt classes of metric groups, and
//! dimension-based sufficient conditions for solvability and weak
//! group-theoreticality of braided fusion categories.

pub mod abelian;
pub mod arith;
pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod fusion_ring;
pub mod metric_group;
pub mod report;
pub mod witt;
