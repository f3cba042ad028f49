use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::corpus::{JournalRankTable, Publication};
use crate::graph::{category_subgraph, PersonMap, SocialGraph};

use super::{pagerank_indexed, path_scores, Adjacency, EdgeLength, PageRankParams};

/// Features the ranker learns from, for one person within one category.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureVector {
    pub person_id: String,
    pub category_id: String,
    pub pagerank: f64,
    pub betweenness: f64,
    pub closeness: f64,
    pub journal_rank: f64,
    pub reader_count: u64,
    pub user_rank: i64,
}

/// Which graph the centralities are measured on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FeatureScope {
    /// The category's induced subgraph.
    #[default]
    CategorySubgraph,
    /// The complete fused graph.
    FullGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CentralityConfig {
    pub pagerank: PageRankParams,
    pub edge_length: EdgeLength,
    pub scope: FeatureScope,
}

#[derive(Debug, Clone, Default)]
pub struct GraphScores {
    pub pagerank: BTreeMap<String, f64>,
    pub betweenness: BTreeMap<String, f64>,
    pub closeness: BTreeMap<String, f64>,
}

/// All three centralities over one graph.
pub fn graph_scores(graph: &SocialGraph, config: &CentralityConfig) -> GraphScores {
    let adj = Adjacency::from_graph(graph);
    let pr = pagerank_indexed(&adj, &config.pagerank);
    let paths = path_scores(&adj, config.edge_length);
    let zip = |v: Vec<f64>| -> BTreeMap<String, f64> { adj.ids.iter().cloned().zip(v).collect() };
    GraphScores {
        pagerank: zip(pr),
        betweenness: zip(paths.betweenness),
        closeness: zip(paths.closeness),
    }
}

/// Combines graph scores with bibliographic features.
///
/// `publications` are the person's publications in the category. Journal
/// rank is the mean over those with a journal found in `journal_ranks`, or
/// 0 when there is none.
pub fn assemble_features(
    person_id: &str,
    category_id: &str,
    scores: &GraphScores,
    publications: &[&Publication],
    journal_ranks: &JournalRankTable,
    user_rank: i64,
) -> FeatureVector {
    let ranks: Vec<f64> = publications
        .iter()
        .filter_map(|p| journal_ranks.get(p.journal.as_deref()?))
        .collect();
    let journal_rank = if ranks.is_empty() {
        0.0
    } else {
        ranks.iter().sum::<f64>() / ranks.len() as f64
    };
    let score = |m: &BTreeMap<String, f64>| m.get(person_id).copied().unwrap_or(0.0);
    FeatureVector {
        person_id: person_id.to_string(),
        category_id: category_id.to_string(),
        pagerank: score(&scores.pagerank),
        betweenness: score(&scores.betweenness),
        closeness: score(&scores.closeness),
        journal_rank,
        reader_count: publications.iter().map(|p| p.reader_count).sum(),
        user_rank,
    }
}

/// Feature vectors for every person with a publication in `category_id`,
/// sorted by person id. `user_rank` is looked up through `votes`.
pub fn category_features(
    graph: &SocialGraph,
    category_id: &str,
    publications: &[Publication],
    person_map: &PersonMap,
    journal_ranks: &JournalRankTable,
    config: &CentralityConfig,
    votes: impl Fn(&str) -> i64,
) -> Vec<FeatureVector> {
    let mut by_person: BTreeMap<&str, Vec<&Publication>> = BTreeMap::new();
    for p in publications
        .iter()
        .filter(|p| p.category_id.as_deref() == Some(category_id))
    {
        for person in person_map.authors_of(p) {
            by_person.entry(person).or_default().push(p);
        }
    }

    let scores = match config.scope {
        FeatureScope::CategorySubgraph => graph_scores(
            &category_subgraph(graph, category_id, publications, person_map),
            config,
        ),
        FeatureScope::FullGraph => graph_scores(graph, config),
    };

    by_person
        .into_iter()
        .map(|(person, pubs)| {
            assemble_features(
                person,
                category_id,
                &scores,
                &pubs,
                journal_ranks,
                votes(person),
            )
        })
        .collect()
}

fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// One line per vector:
/// `person_id,category_id,pagerank,betweenness,closeness,journal_rank,reader_count,user_rank`
/// with reals at 9 significant digits.
pub fn format_feature_dump<'a>(features: impl IntoIterator<Item = &'a FeatureVector>) -> String {
    let mut out = String::new();
    for f in features {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            f.person_id,
            f.category_id,
            sig9(f.pagerank),
            sig9(f.betweenness),
            sig9(f.closeness),
            sig9(f.journal_rank),
            f.reader_count,
            f.user_rank
        );
    }
    out
}

/// Reads a feature dump back. Returns the 1-based line of the first bad
/// record on failure.
pub fn parse_feature_dump(text: &str) -> Result<Vec<FeatureVector>, (usize, String)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 8 {
            return Err((i + 1, format!("expected 8 fields, found {}", parts.len())));
        }
        let real = |s: &str| s.parse::<f64>().map_err(|e| (i + 1, format!("`{s}`: {e}")));
        out.push(FeatureVector {
            person_id: parts[0].to_string(),
            category_id: parts[1].to_string(),
            pagerank: real(parts[2])?,
            betweenness: real(parts[3])?,
            closeness: real(parts[4])?,
            journal_rank: real(parts[5])?,
            reader_count: parts[6]
                .parse()
                .map_err(|e| (i + 1, format!("`{}`: {e}", parts[6])))?,
            user_rank: parts[7]
                .parse()
                .map_err(|e| (i + 1, format!("`{}`: {e}", parts[7])))?,
        });
    }
    Ok(out)
}
