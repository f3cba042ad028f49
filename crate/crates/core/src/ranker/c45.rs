//! C4.5 decision trees over continuous features.
//!
//! Splits are binary `value <= threshold` tests with thresholds at midpoints
//! between consecutive distinct values. For each feature the threshold with
//! the highest information gain is kept; among features whose gain is at
//! least the mean gain of all splittable features, the one with the highest
//! gain ratio wins. No pruning; depth and node size bound growth instead.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::centrality::FeatureVector;

use super::RankError;

const GAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    PageRank,
    Betweenness,
    Closeness,
    JournalRank,
    ReaderCount,
    UserRank,
}

impl Feature {
    pub const ALL: [Feature; 6] = [
        Feature::PageRank,
        Feature::Betweenness,
        Feature::Closeness,
        Feature::JournalRank,
        Feature::ReaderCount,
        Feature::UserRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::PageRank => "pagerank",
            Feature::Betweenness => "betweenness",
            Feature::Closeness => "closeness",
            Feature::JournalRank => "journal_rank",
            Feature::ReaderCount => "reader_count",
            Feature::UserRank => "user_rank",
        }
    }

    pub fn value(self, f: &FeatureVector) -> f64 {
        match self {
            Feature::PageRank => f.pagerank,
            Feature::Betweenness => f.betweenness,
            Feature::Closeness => f.closeness,
            Feature::JournalRank => f.journal_rank,
            Feature::ReaderCount => f.reader_count as f64,
            Feature::UserRank => f.user_rank as f64,
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown feature `{s}`"))
    }
}

/// Binary entropy in bits of a `pos`/`neg` class split. `0·log 0 = 0`.
pub fn entropy(pos: usize, neg: usize) -> f64 {
    let total = (pos + neg) as f64;
    if total == 0.0 {
        return 0.0;
    }
    [pos, neg]
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub feature: Feature,
    pub threshold: f64,
    pub gain: f64,
    pub split_info: f64,
    pub gain_ratio: f64,
}

/// Best threshold for one feature, or `None` when the feature is constant
/// over the dataset.
pub fn best_split(dataset: &[(FeatureVector, bool)], feature: Feature) -> Option<Split> {
    let rows: Vec<(f64, bool)> = dataset
        .iter()
        .map(|(f, label)| (feature.value(f), *label))
        .collect();
    best_split_values(&rows, feature)
}

fn best_split_values(rows: &[(f64, bool)], feature: Feature) -> Option<Split> {
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

    let n = sorted.len();
    let total_pos = sorted.iter().filter(|r| r.1).count();
    let parent = entropy(total_pos, n - total_pos);

    let mut best: Option<Split> = None;
    let (mut left_pos, mut left_n) = (0usize, 0usize);
    for i in 0..n.saturating_sub(1) {
        left_n += 1;
        left_pos += usize::from(sorted[i].1);
        let (lo, hi) = (sorted[i].0, sorted[i + 1].0);
        if lo == hi {
            continue;
        }
        let right_n = n - left_n;
        let right_pos = total_pos - left_pos;
        let children = (left_n as f64 * entropy(left_pos, left_n - left_pos)
            + right_n as f64 * entropy(right_pos, right_n - right_pos))
            / n as f64;
        let gain = (parent - children).max(0.0);
        let split_info = entropy(left_n, right_n);
        let gain_ratio = if split_info > 0.0 {
            gain / split_info
        } else {
            0.0
        };
        // midpoint of adjacent floats can round up to `hi`
        let mid = lo + (hi - lo) / 2.0;
        let threshold = if mid < hi { mid } else { lo };
        if best.is_none_or(|b| gain > b.gain + GAIN_EPS) {
            best = Some(Split {
                feature,
                threshold,
                gain,
                split_info,
                gain_ratio,
            });
        }
    }
    best
}

/// Picks the split for a node, or `None` if no feature yields positive gain.
fn choose_split(rows: &[(&FeatureVector, bool)]) -> Option<Split> {
    let candidates: Vec<Split> = Feature::ALL
        .into_iter()
        .filter_map(|feature| {
            let values: Vec<(f64, bool)> =
                rows.iter().map(|(f, l)| (feature.value(f), *l)).collect();
            best_split_values(&values, feature)
        })
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let mean_gain = candidates.iter().map(|s| s.gain).sum::<f64>() / candidates.len() as f64;
    candidates
        .into_iter()
        .filter(|s| s.gain > GAIN_EPS && s.gain >= mean_gain - GAIN_EPS)
        .fold(None, |best: Option<Split>, s| match best {
            Some(b) if s.gain_ratio <= b.gain_ratio + GAIN_EPS => Some(b),
            _ => Some(s),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrainParams {
    pub min_leaf: usize,
    pub max_depth: usize,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            min_leaf: 2,
            max_depth: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Split {
        feature: Feature,
        threshold: f64,
        /// `value <= threshold`
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        expert_count: usize,
        non_expert_count: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    pub root: TreeNode,
}

pub fn train_c45(
    dataset: &[(FeatureVector, bool)],
    params: &TrainParams,
) -> Result<DecisionTree, RankError> {
    if dataset.is_empty() {
        return Err(RankError::EmptyDataset);
    }
    let rows: Vec<(&FeatureVector, bool)> = dataset.iter().map(|(f, l)| (f, *l)).collect();
    Ok(DecisionTree {
        root: grow(&rows, 0, params),
    })
}

fn grow(rows: &[(&FeatureVector, bool)], depth: usize, params: &TrainParams) -> TreeNode {
    let pos = rows.iter().filter(|r| r.1).count();
    let leaf = TreeNode::Leaf {
        expert_count: pos,
        non_expert_count: rows.len() - pos,
    };
    if pos == 0
        || pos == rows.len()
        || rows.len() < 2 * params.min_leaf
        || depth >= params.max_depth
    {
        return leaf;
    }
    let Some(split) = choose_split(rows) else {
        return leaf;
    };
    let (left, right): (Vec<_>, Vec<_>) = rows
        .iter()
        .partition(|(f, _)| split.feature.value(f) <= split.threshold);
    TreeNode::Split {
        feature: split.feature,
        threshold: split.threshold,
        left: Box::new(grow(&left, depth + 1, params)),
        right: Box::new(grow(&right, depth + 1, params)),
    }
}

/// Laplace-smoothed expert probability of a leaf.
pub fn leaf_score(expert_count: usize, non_expert_count: usize) -> f64 {
    (expert_count as f64 + 1.0) / ((expert_count + non_expert_count) as f64 + 2.0)
}

impl DecisionTree {
    /// The `(expert, non_expert)` counts of the leaf `features` lands in.
    pub fn leaf_for(&self, features: &FeatureVector) -> (usize, usize) {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if feature.value(features) <= *threshold {
                        left
                    } else {
                        right
                    };
                }
                TreeNode::Leaf {
                    expert_count,
                    non_expert_count,
                } => return (*expert_count, *non_expert_count),
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn depth(n: &TreeNode) -> usize {
            match n {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => 1 + depth(left).max(depth(right)),
            }
        }
        depth(&self.root)
    }

    /// Leaves in preorder.
    pub fn leaves(&self) -> Vec<(usize, usize)> {
        fn walk(n: &TreeNode, out: &mut Vec<(usize, usize)>) {
            match n {
                TreeNode::Leaf {
                    expert_count,
                    non_expert_count,
                } => out.push((*expert_count, *non_expert_count)),
                TreeNode::Split { left, right, .. } => {
                    walk(left, out);
                    walk(right, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// Preorder text: `node <feature> <threshold>` or `leaf <pos> <neg>`.
    pub fn to_text(&self) -> String {
        fn walk(n: &TreeNode, out: &mut String) {
            match n {
                TreeNode::Leaf {
                    expert_count,
                    non_expert_count,
                } => {
                    let _ = writeln!(out, "leaf {expert_count} {non_expert_count}");
                }
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    let _ = writeln!(out, "node {feature} {threshold:?}");
                    walk(left, out);
                    walk(right, out);
                }
            }
        }
        let mut out = String::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn from_text(text: &str) -> Result<DecisionTree, RankError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        fn bad(line: usize, message: impl Into<String>) -> RankError {
            RankError::ModelParse {
                line,
                message: message.into(),
            }
        }

        fn node<'a>(
            lines: &mut impl Iterator<Item = (usize, &'a str)>,
        ) -> Result<TreeNode, RankError> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| bad(0, "unexpected end of model"))?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["leaf", pos, neg] => Ok(TreeNode::Leaf {
                    expert_count: pos.parse().map_err(|_| bad(no, "bad leaf count"))?,
                    non_expert_count: neg.parse().map_err(|_| bad(no, "bad leaf count"))?,
                }),
                ["node", feature, threshold] => {
                    let feature = feature.parse().map_err(|e: String| bad(no, e))?;
                    let threshold: f64 = threshold.parse().map_err(|_| bad(no, "bad threshold"))?;
                    let left = node(lines)?;
                    let right = node(lines)?;
                    Ok(TreeNode::Split {
                        feature,
                        threshold,
                        left: Box::new(left),
                        right: Box::new(right),
                    })
                }
                _ => Err(bad(no, format!("unrecognized model line `{line}`"))),
            }
        }

        let root = node(&mut lines)?;
        if let Some((no, _)) = lines.next() {
            return Err(bad(no, "trailing lines after tree"));
        }
        Ok(DecisionTree { root })
    }
}

/// Expertise score in `[0, 1]` for one feature vector.
pub fn score(tree: &DecisionTree, features: &FeatureVector) -> f64 {
    let (pos, neg) = tree.leaf_for(features);
    leaf_score(pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(reader_count: u64) -> FeatureVector {
        FeatureVector {
            person_id: format!("p{reader_count}"),
            category_id: "c".into(),
            pagerank: 0.0,
            betweenness: 0.0,
            closeness: 0.0,
            journal_rank: 0.0,
            reader_count,
            user_rank: 0,
        }
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(4, 0), 0.0);
        assert_eq!(entropy(0, 4), 0.0);
        assert_eq!(entropy(5, 5), 1.0);
        assert!((entropy(9, 5) - 0.9403).abs() < 1e-4);
        assert_eq!(entropy(0, 0), 0.0);
    }

    #[test]
    fn four_point_split() {
        let data: Vec<_> = [(1, true), (2, true), (3, false), (4, false)]
            .into_iter()
            .map(|(v, l)| (fv(v), l))
            .collect();
        let s = best_split(&data, Feature::ReaderCount).unwrap();
        assert_eq!(s.threshold, 2.5);
        assert!((s.gain - 1.0).abs() < 1e-12);
        assert!((s.split_info - 1.0).abs() < 1e-12);
        assert!((s.gain_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_labels_have_zero_gain() {
        let data: Vec<_> = (1..=5).map(|v| (fv(v), true)).collect();
        assert_eq!(best_split(&data, Feature::ReaderCount).unwrap().gain, 0.0);
    }

    #[test]
    fn constant_feature_has_no_split() {
        let data: Vec<_> = (1..=5).map(|v| (fv(v), v % 2 == 0)).collect();
        assert_eq!(best_split(&data, Feature::PageRank), None);
    }

    #[test]
    fn pure_dataset_single_leaf() {
        let data: Vec<_> = (1..=5).map(|v| (fv(v), true)).collect();
        let tree = train_c45(&data, &TrainParams::default()).unwrap();
        assert_eq!(
            tree.root,
            TreeNode::Leaf {
                expert_count: 5,
                non_expert_count: 0
            }
        );
    }

    #[test]
    fn empty_dataset_rejected() {
        assert!(matches!(
            train_c45(&[], &TrainParams::default()),
            Err(RankError::EmptyDataset)
        ));
    }

    #[test]
    fn reader_count_separates_at_100() {
        let data: Vec<_> = [20, 40, 60, 80, 95, 105, 150, 200, 300, 500]
            .into_iter()
            .map(|v| (fv(v), v > 100))
            .collect();
        let tree = train_c45(&data, &TrainParams::default()).unwrap();
        assert_eq!(tree.depth(), 1);
        match tree.root {
            TreeNode::Split {
                feature, threshold, ..
            } => {
                assert_eq!(feature, Feature::ReaderCount);
                assert_eq!(threshold, 100.0);
            }
            _ => panic!("expected a split"),
        }
    }

    #[test]
    fn laplace_scores() {
        assert!((leaf_score(3, 1) - 4.0 / 6.0).abs() < 1e-15);
        assert_eq!(leaf_score(0, 0), 0.5);
        assert!((leaf_score(10, 0) - 11.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn text_round_trip() {
        let data: Vec<_> = [
            (1, true),
            (2, true),
            (3, false),
            (4, false),
            (5, true),
            (6, true),
        ]
        .into_iter()
        .map(|(v, l)| (fv(v), l))
        .collect();
        let tree = train_c45(
            &data,
            &TrainParams {
                min_leaf: 1,
                max_depth: 6,
            },
        )
        .unwrap();
        let text = tree.to_text();
        assert_eq!(DecisionTree::from_text(&text).unwrap(), tree);
        assert!(DecisionTree::from_text("node pagerank 0.5\nleaf 1 0\n").is_err());
        assert!(DecisionTree::from_text("leaf 1 0\nleaf 1 0\n").is_err());
    }
}
