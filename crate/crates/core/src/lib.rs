//! b-colorings of graphs with stability number two and of tree-cographs.
//!
//! The crate reduces b-colorings of graphs whose complement is triangle-free
//! to strongly maximal matchings of the complement, computes minimum strongly
//! maximal matchings and matching deficiencies of trees by dynamic
//! programming, and composes dominance vectors over the union/join
//! decomposition of tree-cographs. Every polynomial routine has a brute-force
//! counterpart in [`oracle`].

pub mod bcoloring;
pub mod cost;
pub mod dominance;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod knapsack;
pub mod matching;
pub mod oracle;
pub mod reduction;
pub mod tcexpr;
pub mod tree_dp;

mod weighted;

pub use bcoloring::{BVerdict, Coloring};
pub use cost::Cost;
pub use dominance::{DominanceVector, PivotReport};
pub use error::{Error, Result};
pub use graph::Graph;
pub use matching::{AltPath, Matching};
pub use tcexpr::TcExpr;
