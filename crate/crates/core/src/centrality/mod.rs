//! Weighted centralities and the per-category feature vectors built on them.

mod adjacency;
mod features;
mod pagerank;
mod paths;

pub use adjacency::Adjacency;
pub use features::*;
pub use pagerank::{pagerank, PageRankParams};
pub use paths::{betweenness, closeness, EdgeLength, PATH_EPS};

pub(crate) use pagerank::pagerank_indexed;
pub(crate) use paths::path_scores;
