use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::corpus::{Group, ProfileEdge, ProfileEdgeSet, Publication};

use super::PersonMap;

/// Contribution of each signal to an edge weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeWeights {
    /// Added once when the two persons are friends in the profile network.
    pub profile_alpha: f64,
    /// Added per public group the two persons share.
    pub group_alpha: f64,
}

impl Default for EdgeWeights {
    fn default() -> Self {
        EdgeWeights {
            profile_alpha: 1.0,
            group_alpha: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeData {
    pub coauthor_count: u32,
    pub has_profile_edge: bool,
    pub shared_groups: u32,
    pub weight: f64,
}

impl EdgeData {
    const EMPTY: EdgeData = EdgeData {
        coauthor_count: 0,
        has_profile_edge: false,
        shared_groups: 0,
        weight: 0.0,
    };

    /// `coauthor_count + α·[profile edge] + α_g·shared_groups`
    pub fn expected_weight(&self, w: &EdgeWeights) -> f64 {
        let profile = if self.has_profile_edge {
            w.profile_alpha
        } else {
            0.0
        };
        self.coauthor_count as f64 + profile + w.group_alpha * self.shared_groups as f64
    }
}

/// Undirected weighted graph over person ids. Edge keys are stored with the
/// smaller id first; self-loops are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SocialGraph {
    weights: EdgeWeights,
    nodes: BTreeSet<String>,
    edges: BTreeMap<(String, String), EdgeData>,
}

fn key(a: &str, b: &str) -> Option<(String, String)> {
    match a.cmp(b) {
        std::cmp::Ordering::Less => Some((a.to_string(), b.to_string())),
        std::cmp::Ordering::Greater => Some((b.to_string(), a.to_string())),
        std::cmp::Ordering::Equal => None,
    }
}

impl SocialGraph {
    pub fn new(weights: EdgeWeights) -> Self {
        assert!(
            weights.profile_alpha > 0.0 && weights.group_alpha > 0.0,
            "edge weight contributions must be positive"
        );
        SocialGraph {
            weights,
            nodes: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn weights(&self) -> &EdgeWeights {
        &self.weights
    }

    pub fn add_node(&mut self, id: &str) {
        if !self.nodes.contains(id) {
            self.nodes.insert(id.to_string());
        }
    }

    pub fn contains_node(&self, id: &str) -> bool {
        self.nodes.contains(id)
    }

    /// Node ids in sorted order.
    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Edges as `(a, b, data)` with `a < b`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &EdgeData)> {
        self.edges
            .iter()
            .map(|((a, b), d)| (a.as_str(), b.as_str(), d))
    }

    pub fn edge(&self, a: &str, b: &str) -> Option<&EdgeData> {
        self.edges.get(&key(a, b)?)
    }

    fn update(&mut self, a: &str, b: &str, f: impl FnOnce(&mut EdgeData)) -> bool {
        let Some(k) = key(a, b) else {
            return false;
        };
        self.add_node(a);
        self.add_node(b);
        let weights = self.weights;
        let data = self.edges.entry(k).or_insert(EdgeData::EMPTY);
        f(data);
        data.weight = data.expected_weight(&weights);
        true
    }

    pub fn add_coauthorship(&mut self, a: &str, b: &str) -> bool {
        self.update(a, b, |d| d.coauthor_count += 1)
    }

    pub fn add_profile_link(&mut self, a: &str, b: &str) -> bool {
        self.update(a, b, |d| d.has_profile_edge = true)
    }

    pub fn add_group_link(&mut self, a: &str, b: &str) -> bool {
        self.update(a, b, |d| d.shared_groups += 1)
    }

    /// Subgraph induced on `keep`. Edge data is copied unchanged.
    pub fn induced(&self, keep: &HashSet<&str>) -> SocialGraph {
        SocialGraph {
            weights: self.weights,
            nodes: self
                .nodes
                .iter()
                .filter(|n| keep.contains(n.as_str()))
                .cloned()
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|((a, b), _)| keep.contains(a.as_str()) && keep.contains(b.as_str()))
                .map(|(k, d)| (k.clone(), *d))
                .collect(),
        }
    }

    /// Returns a copy with every weight multiplied by `factor`. Only used to
    /// probe scale invariance; the result no longer obeys the weight law.
    pub fn scaled(&self, factor: f64) -> SocialGraph {
        let mut g = self.clone();
        for d in g.edges.values_mut() {
            d.weight *= factor;
        }
        g
    }

    /// Checks the weight law on every edge, returning the offending pairs.
    pub fn weight_law_violations(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .filter(|(_, d)| {
                d.weight <= 0.0 || (d.weight - d.expected_weight(&self.weights)).abs() > 1e-12
            })
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// Coauthorship graph: one node per credited person, `+1` per shared
/// publication on every unordered author pair.
pub fn build_coauthor_graph(
    publications: &[Publication],
    person_map: &PersonMap,
    weights: EdgeWeights,
) -> SocialGraph {
    let mut g = SocialGraph::new(weights);
    for p in publications {
        let authors = person_map.authors_of(p);
        for a in &authors {
            g.add_node(a);
        }
        for (i, a) in authors.iter().enumerate() {
            for b in &authors[i + 1..] {
                g.add_coauthorship(a, b);
            }
        }
    }
    g
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverlayReport {
    pub applied: usize,
    /// Edges with an endpoint that resolves to no person.
    pub skipped: Vec<ProfileEdge>,
}

/// Adds profile friendships on top of `graph`.
pub fn overlay_profile_edges(
    graph: &mut SocialGraph,
    profile_edges: &ProfileEdgeSet,
    person_map: &PersonMap,
) -> OverlayReport {
    let mut report = OverlayReport::default();
    for e in profile_edges {
        match (
            person_map.person_for_profile(e.a()),
            person_map.person_for_profile(e.b()),
        ) {
            (Some(a), Some(b)) if a != b => {
                graph.add_profile_link(a, b);
                report.applied += 1;
            }
            _ => report.skipped.push(e.clone()),
        }
    }
    report
}

/// Adds one group link per shared group to every member pair.
pub fn overlay_group_edges(
    graph: &mut SocialGraph,
    groups: &[Group],
    person_map: &PersonMap,
) -> usize {
    let mut added = 0;
    for g in groups {
        let members: BTreeSet<&str> = g
            .members
            .iter()
            .filter_map(|m| person_map.person_for_profile(m))
            .collect();
        let members: Vec<&str> = members.into_iter().collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                graph.add_group_link(a, b);
                added += 1;
            }
        }
    }
    added
}

/// The social network of one domain: persons with at least one publication
/// in `category_id`, and the edges among them.
pub fn category_subgraph(
    graph: &SocialGraph,
    category_id: &str,
    publications: &[Publication],
    person_map: &PersonMap,
) -> SocialGraph {
    let members: HashSet<&str> = publications
        .iter()
        .filter(|p| p.category_id.as_deref() == Some(category_id))
        .flat_map(|p| person_map.authors_of(p))
        .collect();
    graph.induced(&members)
}

/// `person_a,person_b,coauthor_count,has_profile_edge,weight` per edge.
pub fn format_edge_list(graph: &SocialGraph) -> String {
    let mut out = String::new();
    for (a, b, d) in graph.edges() {
        let _ = writeln!(
            out,
            "{a},{b},{},{},{}",
            d.coauthor_count, d.has_profile_edge, d.weight
        );
    }
    out
}

/// Reads [`format_edge_list`] output back. `nodes` adds isolated nodes. The
/// stored weights are taken as written.
pub fn parse_edge_list<'a>(
    text: &str,
    nodes: impl IntoIterator<Item = &'a str>,
) -> Result<SocialGraph, (usize, String)> {
    let mut g = SocialGraph::new(EdgeWeights::default());
    for n in nodes {
        g.add_node(n);
    }
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |m: String| (i + 1, m);
        let parts: Vec<&str> = line.split(',').collect();
        let [a, b, count, profile, weight] = parts.as_slice() else {
            return Err(bad(format!("expected 5 fields, found {}", parts.len())));
        };
        let k = key(a, b).ok_or_else(|| bad(format!("self-loop on `{a}`")))?;
        let data = EdgeData {
            coauthor_count: count
                .parse()
                .map_err(|_| bad(format!("bad count `{count}`")))?,
            has_profile_edge: profile
                .parse()
                .map_err(|_| bad(format!("bad flag `{profile}`")))?,
            shared_groups: 0,
            weight: weight
                .parse()
                .map_err(|_| bad(format!("bad weight `{weight}`")))?,
        };
        g.add_node(a);
        g.add_node(b);
        g.edges.insert(k, data);
    }
    Ok(g)
}
