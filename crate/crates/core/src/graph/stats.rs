use std::collections::HashMap;

use serde::Serialize;

use super::SocialGraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub connected_component_count: usize,
    pub largest_component_size: usize,
    /// Components that are complete subgraphs (isolated nodes included).
    pub clique_like_component_count: usize,
}

impl std::fmt::Display for GraphStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "nodes\t{}", self.node_count)?;
        writeln!(f, "edges\t{}", self.edge_count)?;
        writeln!(f, "components\t{}", self.connected_component_count)?;
        writeln!(f, "largest_component\t{}", self.largest_component_size)?;
        writeln!(
            f,
            "clique_like_components\t{}",
            self.clique_like_component_count
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

pub fn graph_stats(graph: &SocialGraph) -> GraphStats {
    let index: HashMap<&str, usize> = graph.nodes().enumerate().map(|(i, n)| (n, i)).collect();
    let n = index.len();
    let mut uf = UnionFind::new(n);
    for (a, b, _) in graph.edges() {
        uf.union(index[a], index[b]);
    }

    // root -> (nodes, edges)
    let mut components: HashMap<usize, (usize, usize)> = HashMap::new();
    for i in 0..n {
        components.entry(uf.find(i)).or_default().0 += 1;
    }
    for (a, _, _) in graph.edges() {
        let root = uf.find(index[a]);
        components.get_mut(&root).expect("root registered").1 += 1;
    }

    GraphStats {
        node_count: n,
        edge_count: graph.edge_count(),
        connected_component_count: components.len(),
        largest_component_size: components.values().map(|c| c.0).max().unwrap_or(0),
        clique_like_component_count: components
            .values()
            .filter(|(nodes, edges)| *edges == nodes * (nodes - 1) / 2)
            .count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeWeights;

    #[test]
    fn triangle_and_path() {
        let mut g = SocialGraph::new(EdgeWeights::default());
        g.add_coauthorship("a", "b");
        g.add_coauthorship("b", "c");
        g.add_coauthorship("a", "c");
        g.add_coauthorship("x", "y");
        g.add_coauthorship("y", "z");
        let s = graph_stats(&g);
        assert_eq!(s.node_count, 6);
        assert_eq!(s.edge_count, 5);
        assert_eq!(s.connected_component_count, 2);
        assert_eq!(s.largest_component_size, 3);
        assert_eq!(s.clique_like_component_count, 1);
    }

    #[test]
    fn empty_graph() {
        let s = graph_stats(&SocialGraph::new(EdgeWeights::default()));
        assert_eq!(s, GraphStats::default());
    }
}
