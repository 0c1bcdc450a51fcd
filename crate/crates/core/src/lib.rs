//! Exact graph invariants and checkers for Dirac-type long-cycle theorems.
//!
//! The crate computes minimum degree, connectivity, independence number and
//! circumference exactly, enumerates minimum cut-sets and fragments, builds
//! extremal path systems over fragments, evaluates `(Q,r)`-scheme bounds
//! against a brute-force oracle, and runs statement checkers over graph
//! streams with resumable JSONL output.

pub mod budget;
pub mod canon;
pub mod crosscheck;
pub mod dsl;
pub mod error;
pub mod families;
pub mod fragments;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod path_systems;
pub mod schemes;
pub mod search;
pub mod stream;
pub mod theorems;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use invariants::InvariantBundle;
