//! Unit disk representations for caterpillars and lobsters.
//!
//! The crate covers tree classification, a geometric verifier for unit disk
//! intersection and weak contact layouts, a constructive recognizer for
//! caterpillars, a grid dynamic program for lobsters with a brute-force
//! oracle, and generators for ladder-based rigidity gadgets.

pub mod caterpillar;
pub mod error;
pub mod gadgets;
pub mod geometry;
pub mod graph;
pub mod lobster;
pub mod tree;

pub use error::{Error, Result};
pub use graph::Graph;
pub use tree::{classify_tree, TreeClass, TreeKind};
