use std::collections::{BTreeSet, VecDeque};
use std::sync::{Arc, Mutex, RwLock};

use crate::centrality::FeatureVector;
use crate::corpus::{AcademicStatus, ParseMode};
use crate::error::{Error, Result};
use crate::index::{training_set, ExpertIndex, PipelineConfig};
use crate::ranker::{bootstrap_labels, train_c45, DecisionTree, RankError, RankedList, VoteStore};

use super::ServiceConfig;

/// Vote-independent features per category, least recently used evicted
/// first. `user_rank` is filled in from the vote store on every read, so
/// votes never invalidate entries.
#[derive(Debug)]
struct FeatureCache {
    capacity: usize,
    entries: VecDeque<(String, Arc<Vec<FeatureVector>>)>,
}

impl FeatureCache {
    fn get(&mut self, category: &str) -> Option<Arc<Vec<FeatureVector>>> {
        let pos = self.entries.iter().position(|(c, _)| c == category)?;
        let entry = self.entries.remove(pos).expect("position is valid");
        let value = entry.1.clone();
        self.entries.push_back(entry);
        Some(value)
    }

    fn insert(&mut self, category: &str, value: Arc<Vec<FeatureVector>>) {
        self.entries.retain(|(c, _)| c != category);
        if self.entries.len() == self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back((category.to_string(), value));
    }
}

/// Shared state behind the HTTP handlers. The index and tree are immutable;
/// votes are single-writer behind a lock.
#[derive(Debug)]
pub struct AppState {
    pub index: ExpertIndex,
    pub tree: DecisionTree,
    votes: RwLock<VoteStore>,
    cache: Mutex<FeatureCache>,
}

impl AppState {
    pub fn new(
        index: ExpertIndex,
        tree: DecisionTree,
        votes: VoteStore,
        cache_size: usize,
    ) -> Self {
        AppState {
            index,
            tree,
            votes: RwLock::new(votes),
            cache: Mutex::new(FeatureCache {
                capacity: cache_size.max(1),
                entries: VecDeque::new(),
            }),
        }
    }

    /// Loads the corpus, opens the vote log and loads or trains the model.
    pub fn from_config(config: &ServiceConfig) -> Result<Self> {
        config.validate()?;
        let mut pipeline = PipelineConfig::default();
        pipeline.graph.weights.profile_alpha = config.alpha;
        pipeline.centrality.pagerank.damping = config.damping;
        let mode = if config.lenient {
            ParseMode::Lenient
        } else {
            ParseMode::Strict
        };
        let index = ExpertIndex::load(&config.corpus_dir, mode, pipeline)?;
        let votes = VoteStore::open(&config.votes_path)?;

        let tree = if config.model_path.exists() {
            let text = std::fs::read_to_string(&config.model_path)
                .map_err(|e| Error::io(&config.model_path, e))?;
            DecisionTree::from_text(&text)?
        } else {
            let table = index.feature_table(|p| votes.tally(p));
            let labels = match &index.corpus.labels {
                Some(l) => l.clone(),
                None => bootstrap_labels(table.values().flatten()),
            };
            let data = training_set(&labels, index.persons(), &table, !config.lenient)?;
            let tree = train_c45(&data, &pipeline.train)?;
            std::fs::write(&config.model_path, tree.to_text())
                .map_err(|e| Error::io(&config.model_path, e))?;
            log::info!("trained model written to {}", config.model_path.display());
            tree
        };
        Ok(AppState::new(index, tree, votes, config.cache_size))
    }

    fn base_features(&self, category: &str) -> Option<Arc<Vec<FeatureVector>>> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(category) {
            return Some(hit);
        }
        // computed without holding the lock; a racing miss just recomputes
        let computed = Arc::new(self.index.category_features(category, |_| 0)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(category, computed.clone());
        Some(computed)
    }

    /// Features for a category with current vote tallies, or `None` for an
    /// unknown category.
    pub fn features(&self, category: &str) -> Option<Vec<FeatureVector>> {
        let base = self.base_features(category)?;
        let votes = self.votes.read().expect("votes lock");
        Some(
            base.iter()
                .cloned()
                .map(|mut f| {
                    f.user_rank = votes.tally(&f.person_id);
                    f
                })
                .collect(),
        )
    }

    pub fn rank(
        &self,
        category: &str,
        statuses: &BTreeSet<AcademicStatus>,
        k: usize,
    ) -> Result<RankedList, RankError> {
        let features = self.features(category);
        crate::ranker::rank_experts(
            category,
            statuses,
            k,
            &self.tree,
            features.as_deref(),
            |p| {
                self.index
                    .person(p)
                    .map(|p| p.academic_status)
                    .unwrap_or(AcademicStatus::Other)
            },
        )
    }

    pub fn vote(&self, voter_token: &str, person_id: &str, delta: i64) -> Result<i64, RankError> {
        let mut votes = self.votes.write().expect("votes lock");
        votes.apply_vote(voter_token, person_id, delta, |p| {
            self.index.person(p).is_some()
        })
    }

    pub fn tally(&self, person_id: &str) -> i64 {
        self.votes.read().expect("votes lock").tally(person_id)
    }

    pub fn cached_categories(&self) -> usize {
        self.cache.lock().expect("cache lock").entries.len()
    }
}
