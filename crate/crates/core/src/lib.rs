//! Recognition of undirected two-colored quasi-best match graphs.
//!
//! [`recognition::heart_tree`] decides membership by repeatedly splitting
//! off heart-vertices and either returns a least-resolved explaining tree or
//! a heartless induced subgraph. [`oracles`] provides two independent
//! membership tests, [`semantics`] turns trees back into graphs, and
//! [`genlab`] generates and enumerates instances for cross-checking.

pub mod bigraph;
pub mod cli;
pub mod formats;
pub mod genlab;
pub mod oracles;
pub mod phylo;
pub mod recognition;
pub mod semantics;

pub use bigraph::{BiGraph, Color, VertexId};
pub use phylo::{Leaf, NodeId, PhyloTree, Truncation};
pub use recognition::{heart_tree, PatternId, Verdict, Witness};
