use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::centrality::FeatureVector;
use crate::corpus::AcademicStatus;

use super::{score, DecisionTree, RankError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedEntry {
    pub person_id: String,
    pub score: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RankedList {
    pub entries: Vec<RankedEntry>,
}

/// Descending score; ties by user rank, reader count and PageRank (all
/// descending), then person id ascending.
fn order(a: &(f64, &FeatureVector), b: &(f64, &FeatureVector)) -> Ordering {
    b.0.total_cmp(&a.0)
        .then_with(|| b.1.user_rank.cmp(&a.1.user_rank))
        .then_with(|| b.1.reader_count.cmp(&a.1.reader_count))
        .then_with(|| b.1.pagerank.total_cmp(&a.1.pagerank))
        .then_with(|| a.1.person_id.cmp(&b.1.person_id))
}

/// Ranks the persons of one category.
///
/// `features` is `None` when the category is unknown. An empty
/// `status_filter` keeps everyone.
pub fn rank_experts(
    category_id: &str,
    status_filter: &BTreeSet<AcademicStatus>,
    k: usize,
    tree: &DecisionTree,
    features: Option<&[FeatureVector]>,
    status_of: impl Fn(&str) -> AcademicStatus,
) -> Result<RankedList, RankError> {
    let features = features.ok_or_else(|| RankError::UnknownCategory(category_id.to_string()))?;
    if k == 0 {
        return Err(RankError::InvalidK);
    }
    let mut scored: Vec<(f64, &FeatureVector)> = features
        .iter()
        .filter(|f| f.category_id == category_id)
        .filter(|f| status_filter.is_empty() || status_filter.contains(&status_of(&f.person_id)))
        .map(|f| (score(tree, f), f))
        .collect();
    scored.sort_by(order);
    Ok(RankedList {
        entries: scored
            .into_iter()
            .take(k)
            .enumerate()
            .map(|(i, (score, f))| RankedEntry {
                person_id: f.person_id.clone(),
                score,
                rank: i + 1,
            })
            .collect(),
    })
}
