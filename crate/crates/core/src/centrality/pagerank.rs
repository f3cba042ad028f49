use std::collections::BTreeMap;

use crate::graph::SocialGraph;

use super::Adjacency;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    /// Stop once the L1 change between iterations drops below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams {
            damping: 0.85,
            tol: 1e-8,
            max_iter: 100,
        }
    }
}

/// Weighted PageRank on an undirected graph.
///
/// Each edge is walked in both directions; from `u` the walk moves to `v`
/// with probability `w(u,v) / Σ_x w(u,x)`. Rank held by isolated nodes is
/// spread uniformly. Scores sum to one.
pub fn pagerank(graph: &SocialGraph, params: &PageRankParams) -> BTreeMap<String, f64> {
    let adj = Adjacency::from_graph(graph);
    let scores = pagerank_indexed(&adj, params);
    adj.ids.into_iter().zip(scores).collect()
}

pub(crate) fn pagerank_indexed(adj: &Adjacency, params: &PageRankParams) -> Vec<f64> {
    assert!(
        params.damping > 0.0 && params.damping < 1.0,
        "damping must lie in (0, 1)"
    );
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let d = params.damping;
    let strength: Vec<f64> = adj
        .neighbors
        .iter()
        .map(|ns| ns.iter().map(|&(_, w)| w).sum())
        .collect();

    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..params.max_iter {
        let dangling: f64 = (0..n)
            .filter(|&u| strength[u] == 0.0)
            .map(|u| rank[u])
            .sum();
        next.fill((1.0 - d) / nf + d * dangling / nf);
        for u in 0..n {
            if strength[u] > 0.0 {
                let share = d * rank[u] / strength[u];
                for &(v, w) in &adj.neighbors[u] {
                    next[v] += share * w;
                }
            }
        }
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change < params.tol {
            break;
        }
    }

    let total: f64 = rank.iter().sum();
    rank.iter_mut().for_each(|r| *r /= total);
    rank
}
