use std::collections::HashMap;

use crate::graph::SocialGraph;

/// Compact index-based view of a [`SocialGraph`]. Nodes are numbered in
/// sorted id order and each neighbor list is sorted by index.
#[derive(Debug, Clone)]
pub struct Adjacency {
    pub ids: Vec<String>,
    pub neighbors: Vec<Vec<(usize, f64)>>,
}

impl Adjacency {
    pub fn from_graph(graph: &SocialGraph) -> Self {
        let ids: Vec<String> = graph.nodes().map(str::to_string).collect();
        let index: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut neighbors = vec![Vec::new(); ids.len()];
        for (a, b, d) in graph.edges() {
            let (ia, ib) = (index[a], index[b]);
            neighbors[ia].push((ib, d.weight));
            neighbors[ib].push((ia, d.weight));
        }
        for list in &mut neighbors {
            list.sort_by_key(|&(j, _)| j);
        }
        Adjacency { ids, neighbors }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}
