//! Shortest-path centralities: Brandes betweenness and harmonic closeness.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use crate::graph::SocialGraph;

use super::Adjacency;

/// Path sums closer than this are treated as equal length.
pub const PATH_EPS: f64 = 1e-12;

/// How an edge weight turns into a path length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeLength {
    /// `1 / weight`: stronger ties are shorter.
    #[default]
    InverseWeight,
    /// Every edge has length 1.
    Unit,
}

impl EdgeLength {
    fn of(self, weight: f64) -> f64 {
        match self {
            EdgeLength::InverseWeight => 1.0 / weight,
            EdgeLength::Unit => 1.0,
        }
    }
}

#[derive(Clone, Copy)]
struct Entry {
    dist: f64,
    node: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // min-heap on distance, then node index
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

struct SingleSource {
    /// Settled nodes in non-decreasing distance order.
    order: Vec<usize>,
    preds: Vec<Vec<usize>>,
    sigma: Vec<f64>,
    dist: Vec<f64>,
}

fn single_source(adj: &Adjacency, source: usize, lengths: EdgeLength) -> SingleSource {
    let n = adj.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();

    dist[source] = 0.0;
    sigma[source] = 1.0;
    heap.push(Entry {
        dist: 0.0,
        node: source,
    });
    while let Some(Entry { dist: d, node: u }) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        order.push(u);
        for &(v, w) in &adj.neighbors[u] {
            if settled[v] {
                continue;
            }
            let alt = d + lengths.of(w);
            if alt < dist[v] - PATH_EPS {
                dist[v] = alt;
                sigma[v] = sigma[u];
                preds[v].clear();
                preds[v].push(u);
                heap.push(Entry { dist: alt, node: v });
            } else if (alt - dist[v]).abs() <= PATH_EPS {
                sigma[v] += sigma[u];
                preds[v].push(u);
            }
        }
    }
    SingleSource {
        order,
        preds,
        sigma,
        dist,
    }
}

pub(crate) struct PathScores {
    pub betweenness: Vec<f64>,
    pub closeness: Vec<f64>,
}

/// Runs one Dijkstra/Brandes pass per source and reduces in node order.
#[allow(clippy::needless_range_loop)]
pub(crate) fn path_scores(adj: &Adjacency, lengths: EdgeLength) -> PathScores {
    let n = adj.len();
    let mut betweenness = vec![0.0; n];
    let mut closeness = vec![0.0; n];
    let mut delta = vec![0.0; n];
    for s in 0..n {
        let sp = single_source(adj, s, lengths);
        closeness[s] = sp
            .order
            .iter()
            .filter(|&&v| v != s)
            .map(|&v| 1.0 / sp.dist[v])
            .sum();

        delta.fill(0.0);
        for &w in sp.order.iter().rev() {
            for &v in &sp.preds[w] {
                delta[v] += sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                betweenness[w] += delta[w];
            }
        }
    }
    // every unordered pair was seen from both ends
    betweenness.iter_mut().for_each(|b| *b /= 2.0);
    PathScores {
        betweenness,
        closeness,
    }
}

/// Unnormalized betweenness over unordered pairs, endpoints excluded.
pub fn betweenness(graph: &SocialGraph, lengths: EdgeLength) -> BTreeMap<String, f64> {
    let adj = Adjacency::from_graph(graph);
    let scores = path_scores(&adj, lengths).betweenness;
    adj.ids.into_iter().zip(scores).collect()
}

/// Harmonic closeness `Σ_{u≠v} 1/d(v,u)`; unreachable nodes add nothing.
pub fn closeness(graph: &SocialGraph, lengths: EdgeLength) -> BTreeMap<String, f64> {
    let adj = Adjacency::from_graph(graph);
    let scores = path_scores(&adj, lengths).closeness;
    adj.ids.into_iter().zip(scores).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeWeights;

    fn graph(edges: &[(&str, &str)]) -> SocialGraph {
        let mut g = SocialGraph::new(EdgeWeights::default());
        for (a, b) in edges {
            g.add_coauthorship(a, b);
        }
        g
    }

    #[test]
    fn path_of_three() {
        let g = graph(&[("a", "b"), ("b", "c")]);
        let b = betweenness(&g, EdgeLength::InverseWeight);
        assert_eq!((b["a"], b["b"], b["c"]), (0.0, 1.0, 0.0));
        let c = closeness(&g, EdgeLength::InverseWeight);
        assert_eq!(c["b"], 2.0);
        assert_eq!(c["a"], 1.5);
    }

    #[test]
    fn triangle_has_no_betweenness() {
        let g = graph(&[("a", "b"), ("b", "c"), ("a", "c")]);
        assert!(betweenness(&g, EdgeLength::Unit)
            .values()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn star_center() {
        let g = graph(&[("c", "x"), ("c", "y"), ("c", "z")]);
        let b = betweenness(&g, EdgeLength::InverseWeight);
        assert_eq!(b["c"], 3.0);
        assert_eq!(b["x"], 0.0);
    }

    #[test]
    fn disconnected_and_single() {
        let mut g = graph(&[]);
        g.add_node("a");
        assert_eq!(closeness(&g, EdgeLength::Unit)["a"], 0.0);
        g.add_node("b");
        let c = closeness(&g, EdgeLength::Unit);
        assert_eq!((c["a"], c["b"]), (0.0, 0.0));
    }

    #[test]
    fn heavier_edges_are_shorter() {
        // a-b-c with weight 3 per hop (length 2/3) beats the direct a-c
        // friendship (length 1) unless lengths are unit.
        let mut g = graph(&[
            ("a", "b"),
            ("a", "b"),
            ("a", "b"),
            ("b", "c"),
            ("b", "c"),
            ("b", "c"),
        ]);
        g.add_profile_link("a", "c");
        assert_eq!(betweenness(&g, EdgeLength::InverseWeight)["b"], 1.0);
        assert_eq!(betweenness(&g, EdgeLength::Unit)["b"], 0.0);
    }

    #[test]
    fn equal_length_paths_split_credit() {
        // square a-b-d, a-c-d: b and c each carry half of the (a,d) pair
        let g = graph(&[("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")]);
        let b = betweenness(&g, EdgeLength::InverseWeight);
        assert_eq!(b["b"], 0.5);
        assert_eq!(b["c"], 0.5);
    }
}
