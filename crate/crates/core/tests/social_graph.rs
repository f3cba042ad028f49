mod common;

use std::collections::{BTreeSet, HashSet};

use common::corpus_dir;
use expert_core::corpus::{
    parse_publications, AcademicStatus, Corpus, ParseMode, Profile, ProfileEdge, ProfileEdgeSet,
    ProfileSource, Publication,
};
use expert_core::graph::{
    build_coauthor_graph, build_social_graph, category_subgraph, graph_stats,
    overlay_profile_edges, resolve_persons, EdgeWeights, GraphConfig, SocialGraph,
};
use expert_core::name_match::DEFAULT_MATCH_THRESHOLD;
use proptest::prelude::*;

fn profile(id: &str, name: &str) -> Profile {
    Profile {
        profile_id: id.into(),
        display_name: name.into(),
        academic_status: AcademicStatus::Professor,
        research_interests: vec![],
        source: ProfileSource::Mendeley,
    }
}

fn pubs(text: &str) -> Vec<Publication> {
    parse_publications(text, "publications.txt", ParseMode::Strict)
        .unwrap()
        .items
}

fn bundled() -> Corpus {
    Corpus::load_dir(&corpus_dir(), ParseMode::Strict).unwrap()
}

#[test]
fn resolution_examples() {
    let profiles = [
        profile("p1", "Ada Lovelace"),
        profile("p2", "Jon Smith"),
        profile("p3", "Ron Smit"),
        profile("p4", "Quiet Person"),
    ];
    let pubs = pubs("x|T|Ada Lovelace;jon smit||ir|5|\n");
    let r = resolve_persons(&pubs, &profiles, DEFAULT_MATCH_THRESHOLD);
    assert_eq!(r.person_map.person_for_author("Ada Lovelace"), Some("p1"));
    assert_eq!(
        r.person_map.person_for_author("jon smit"),
        Some("author:jon_smit")
    );
    let jon = r.person("author:jon_smit").unwrap();
    assert_eq!(jon.profile_id, None);
    let quiet = r.person("p4").unwrap();
    assert_eq!(quiet.total_reader_count, 0);
    assert_eq!(r.report.discarded_for_tie, 1);
    assert_eq!(r.persons.len(), 5);
}

#[test]
fn coauthor_examples() {
    let profiles = [profile("a", "A"), profile("b", "B"), profile("c", "C")];
    let p = pubs("x|T|A;B;C||ir|1|\n");
    let r = resolve_persons(&p, &profiles, DEFAULT_MATCH_THRESHOLD);
    let g = build_coauthor_graph(&p, &r.person_map, EdgeWeights::default());
    assert_eq!(g.edge_count(), 3);
    for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
        assert_eq!(g.edge(x, y).unwrap().coauthor_count, 1);
    }

    let p = pubs("x|T|A;B||ir|1|\ny|U|B;A;A||ir|1|\nz|V|C||ir|1|\n");
    let r = resolve_persons(&p, &profiles, DEFAULT_MATCH_THRESHOLD);
    let g = build_coauthor_graph(&p, &r.person_map, EdgeWeights::default());
    let e = g.edge("a", "b").unwrap();
    assert_eq!((e.coauthor_count, e.weight), (2, 2.0));
    assert_eq!(g.edge_count(), 1);
}

#[test]
fn overlay_examples() {
    let profiles = [profile("a", "A"), profile("b", "B"), profile("c", "C")];
    let p = pubs("x|T|A;B||ir|1|\ny|U|A;B||ir|1|\n");
    let r = resolve_persons(&p, &profiles, DEFAULT_MATCH_THRESHOLD);
    let mut g = build_coauthor_graph(&p, &r.person_map, EdgeWeights::default());
    let edges: ProfileEdgeSet = [
        ProfileEdge::new("a", "b").unwrap(),
        ProfileEdge::new("b", "c").unwrap(),
        ProfileEdge::new("c", "ghost").unwrap(),
    ]
    .into();
    let report = overlay_profile_edges(&mut g, &edges, &r.person_map);
    assert_eq!(g.edge("a", "b").unwrap().weight, 3.0);
    let bc = g.edge("b", "c").unwrap();
    assert_eq!(
        (bc.coauthor_count, bc.has_profile_edge, bc.weight),
        (0, true, 1.0)
    );
    assert_eq!(report.applied, 2);
    assert_eq!(report.skipped.len(), 1);
}

#[test]
fn stats_examples() {
    let tri = common::graph_from(&[("a", "b"), ("b", "c"), ("a", "c")]);
    assert_eq!(graph_stats(&tri).clique_like_component_count, 1);
    let path = common::graph_from(&[("a", "b"), ("b", "c")]);
    assert_eq!(graph_stats(&path).clique_like_component_count, 0);
    let empty = graph_stats(&SocialGraph::new(EdgeWeights::default()));
    assert_eq!(
        (
            empty.node_count,
            empty.edge_count,
            empty.connected_component_count
        ),
        (0, 0, 0)
    );
}

#[test]
fn weight_law_on_bundled_corpus() {
    let fused = build_social_graph(&bundled(), &GraphConfig::default());
    assert!(fused.graph.edge_count() > 100);
    assert!(fused.graph.weight_law_violations().is_empty());
    for (_, _, d) in fused.graph.edges() {
        let expected = d.coauthor_count as f64 + if d.has_profile_edge { 1.0 } else { 0.0 };
        assert_eq!(d.weight, expected);
    }
}

#[test]
fn coauthor_counts_sum_over_pairs() {
    let corpus = bundled();
    let fused = build_social_graph(&corpus, &GraphConfig::default());
    let expected: u32 = corpus
        .publications
        .iter()
        .map(|p| {
            let k = fused.resolution.person_map.authors_of(p).len() as u32;
            k * k.saturating_sub(1) / 2
        })
        .sum();
    let got: u32 = fused.graph.edges().map(|(_, _, d)| d.coauthor_count).sum();
    assert_eq!(got, expected);
}

#[test]
fn every_person_is_a_node() {
    let fused = build_social_graph(&bundled(), &GraphConfig::default());
    let nodes: BTreeSet<&str> = fused.graph.nodes().collect();
    let persons: BTreeSet<&str> = fused
        .resolution
        .persons
        .iter()
        .map(|p| p.person_id.as_str())
        .collect();
    assert_eq!(nodes, persons);
    assert!(nodes.contains("author:jon_smit"));
}

#[test]
fn group_edges_are_opt_in() {
    let corpus = bundled();
    let off = build_social_graph(&corpus, &GraphConfig::default());
    assert!(off.graph.edges().all(|(_, _, d)| d.shared_groups == 0));
    let on = build_social_graph(
        &corpus,
        &GraphConfig {
            group_edges: true,
            ..Default::default()
        },
    );
    assert!(on.graph.edges().any(|(_, _, d)| d.shared_groups > 0));
    assert!(on.graph.weight_law_violations().is_empty());
}

#[test]
fn category_subgraphs() {
    let corpus = bundled();
    let fused = build_social_graph(&corpus, &GraphConfig::default());
    let map = &fused.resolution.person_map;
    let empty = category_subgraph(&fused.graph, "nothing_here", &corpus.publications, map);
    assert!(empty.is_empty());

    let mut seen_twice = false;
    let subs: Vec<SocialGraph> = corpus
        .taxonomy
        .categories()
        .iter()
        .map(|c| category_subgraph(&fused.graph, &c.category_id, &corpus.publications, map))
        .collect();
    for p in &fused.resolution.persons {
        let n = subs
            .iter()
            .filter(|g| g.contains_node(&p.person_id))
            .count();
        seen_twice |= n >= 2;
    }
    assert!(seen_twice, "the corpus has cross-category authors");

    // one category only: the subgraph is the coauthor graph on its authors
    let only_ir: Vec<Publication> = corpus
        .publications
        .iter()
        .filter(|p| p.category_id.as_deref() == Some("information_retrieval"))
        .cloned()
        .collect();
    let r = resolve_persons(&only_ir, &corpus.profiles, DEFAULT_MATCH_THRESHOLD);
    let coauthor = build_coauthor_graph(&only_ir, &r.person_map, EdgeWeights::default());
    let sub = category_subgraph(&coauthor, "information_retrieval", &only_ir, &r.person_map);
    assert_eq!(sub, coauthor);
}

#[test]
fn no_self_loops_or_asymmetry() {
    let fused = build_social_graph(&bundled(), &GraphConfig::default());
    for (a, b, d) in fused.graph.edges() {
        assert!(a < b);
        assert_eq!(fused.graph.edge(b, a), Some(d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Shuffling publications and profile edges builds the same graph.
    #[test]
    fn build_is_order_independent(seed in any::<u64>()) {
        let corpus = bundled();
        let base = build_social_graph(&corpus, &GraphConfig::default());
        let mut shuffled = corpus.clone();
        let n = shuffled.publications.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.publications.swap(i, (s >> 33) as usize % (i + 1));
        }
        shuffled.profiles.reverse();
        let other = build_social_graph(&shuffled, &GraphConfig::default());
        prop_assert_eq!(&other.graph, &base.graph);
        let ids = |f: &expert_core::graph::FusedGraph| -> HashSet<String> {
            f.resolution.persons.iter().map(|p| p.person_id.clone()).collect()
        };
        prop_assert_eq!(ids(&other), ids(&base));
    }
}
