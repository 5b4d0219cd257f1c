//! Finite-radius approximations of locally finite universal graphs.
//!
//! The crate builds the tree of radius-tagged balls of a graph class, glues
//! all balls up to a radius along fixed interior embeddings into a single
//! rooted graph, and checks (strong) containment by rooted embedding search.
//! The `lowerbound` module reproduces the counting certificate showing that
//! no bounded-degree graph contains every graph of maximum degree 3.

pub mod amalgam;
pub mod ball_tree;
pub mod class_spec;
pub mod embed;
pub mod lowerbound;
pub mod rooted_graph;

pub use class_spec::{ClassSpec, EnumLimits};
pub use rooted_graph::{CanonicalBall, Graph, GraphError, RootedGraph};
