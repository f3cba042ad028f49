//! The fused social network: coauthorship overlaid with profile friendships
//! (and, optionally, shared public groups).

mod build;
mod resolve;
mod stats;

pub use build::*;
pub use resolve::*;
pub use stats::*;

use crate::corpus::Corpus;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphConfig {
    pub weights: EdgeWeights,
    /// Add group-derived edges. Off by default.
    pub group_edges: bool,
    /// See [`crate::name_match::match_author_to_profile`].
    pub match_threshold: f64,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig {
            weights: EdgeWeights::default(),
            group_edges: false,
            match_threshold: crate::name_match::DEFAULT_MATCH_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FusedGraph {
    pub resolution: Resolution,
    pub graph: SocialGraph,
    pub overlay: OverlayReport,
}

/// Resolves persons and builds the complete network. Every person is a node,
/// including profile-only members with no edges.
pub fn build_social_graph(corpus: &Corpus, config: &GraphConfig) -> FusedGraph {
    let resolution = resolve_persons(
        &corpus.publications,
        &corpus.profiles,
        config.match_threshold,
    );
    let mut graph =
        build_coauthor_graph(&corpus.publications, &resolution.person_map, config.weights);
    for p in &resolution.persons {
        graph.add_node(&p.person_id);
    }
    let overlay = overlay_profile_edges(&mut graph, &corpus.edges, &resolution.person_map);
    if !overlay.skipped.is_empty() {
        log::warn!(
            "skipped {} profile edges with unresolved endpoints",
            overlay.skipped.len()
        );
    }
    if config.group_edges {
        overlay_group_edges(&mut graph, &corpus.groups, &resolution.person_map);
    }
    FusedGraph {
        resolution,
        graph,
        overlay,
    }
}
