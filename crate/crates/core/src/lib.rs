//! Group centrality on small undirected graphs.
//!
//! Scores vertex sets by group degree, closeness, betweenness and random-walk
//! centrality, finds optimal size-k sets by exhaustive enumeration, and
//! computes random-walk hitting times to vertex sets.

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod optimizer;
pub mod random_walk;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
