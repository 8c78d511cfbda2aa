//! Distance colouring of graphs.
//!
//! A `gamma`-distance colouring gives distinct colours to vertices at
//! distance at most `gamma`; its optimum is `chi(G^gamma)`. This crate
//! computes it exactly for small graphs and checks it against degree-based
//! and spectral upper bounds.

pub mod bitset;
pub mod bounds;
pub mod clique;
pub mod coloring;
pub mod connectivity;
pub mod corpus;
pub mod enumerate;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod spectral;

pub use graph::{Graph, GraphError};
pub use metrics::{power_graph, Distance, PowerGraph};
