use std::collections::BTreeMap;

use crate::centrality::FeatureVector;
use crate::corpus::TrainingLabel;

/// Fraction of each category (by in-category readers) labeled expert.
pub const BOOTSTRAP_EXPERT_FRACTION: f64 = 0.10;

/// Demo labels for when no labels file exists: in every category the top
/// 10% of persons by reader count (at least one) are experts, the rest are
/// not. Reader-count ties go to the smaller person id.
pub fn bootstrap_labels<'a>(
    features: impl IntoIterator<Item = &'a FeatureVector>,
) -> Vec<TrainingLabel> {
    let mut by_category: BTreeMap<&str, Vec<&FeatureVector>> = BTreeMap::new();
    for f in features {
        by_category.entry(&f.category_id).or_default().push(f);
    }
    let mut labels = Vec::new();
    for (category, mut people) in by_category {
        people.sort_by(|a, b| {
            b.reader_count
                .cmp(&a.reader_count)
                .then_with(|| a.person_id.cmp(&b.person_id))
        });
        let experts = ((people.len() as f64 * BOOTSTRAP_EXPERT_FRACTION).ceil() as usize).max(1);
        labels.extend(people.iter().enumerate().map(|(i, f)| TrainingLabel {
            person_ref: f.person_id.clone(),
            category_id: category.to_string(),
            is_expert: i < experts,
        }));
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_tenth_by_readers() {
        let features: Vec<FeatureVector> = (0..15)
            .map(|i| FeatureVector {
                person_id: format!("p{i:02}"),
                category_id: "ir".into(),
                pagerank: 0.0,
                betweenness: 0.0,
                closeness: 0.0,
                journal_rank: 0.0,
                reader_count: i,
                user_rank: 0,
            })
            .collect();
        let labels = bootstrap_labels(&features);
        let experts: Vec<_> = labels
            .iter()
            .filter(|l| l.is_expert)
            .map(|l| l.person_ref.as_str())
            .collect();
        assert_eq!(experts, vec!["p14", "p13"]);
        assert_eq!(labels.len(), 15);
    }
}
