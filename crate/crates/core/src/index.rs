//! End-to-end pipeline: corpus to persons, graph and per-category features,
//! plus the on-disk index used by the command-line tools.
//!
//! An index directory holds:
//!
//! * `persons.txt`: `person_id|display_name|profile_id|status|total_reader_count`
//! * `graph.csv`: the fused graph as an edge list
//! * `features.csv`: the feature dump for every category
//! * `taxonomy.txt`: a copy of the corpus taxonomy
//! * `stats.txt`: graph statistics
//! * `votes.log`: votes, appended by `vote`
//! * `model.txt`: the trained tree, written by `train`

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::centrality::{
    category_features, format_feature_dump, parse_feature_dump, CentralityConfig, FeatureVector,
};
use crate::corpus::{
    format_taxonomy, parse_taxonomy, AcademicStatus, CategoryTaxonomy, Corpus, ParseMode, Profile,
    Publication, TrainingLabel,
};
use crate::error::{Error, Result};
use crate::graph::{
    build_social_graph, format_edge_list, graph_stats, FusedGraph, GraphConfig, Person,
};
use crate::name_match::normalize_name;
use crate::ranker::{TrainParams, VoteStore};

pub const PERSONS_FILE: &str = "persons.txt";
pub const GRAPH_FILE: &str = "graph.csv";
pub const FEATURES_FILE: &str = "features.csv";
pub const STATS_FILE: &str = "stats.txt";
pub const VOTES_FILE: &str = "votes.log";
pub const MODEL_FILE: &str = "model.txt";

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PipelineConfig {
    pub graph: GraphConfig,
    pub centrality: CentralityConfig,
    pub train: TrainParams,
}

/// Features grouped by category. Every taxonomy category has an entry, even
/// when no person published in it.
pub type FeatureTable = BTreeMap<String, Vec<FeatureVector>>;

/// A corpus with its resolved persons and fused graph.
#[derive(Debug, Clone)]
pub struct ExpertIndex {
    pub corpus: Corpus,
    pub fused: FusedGraph,
    pub config: PipelineConfig,
}

impl ExpertIndex {
    pub fn build(corpus: Corpus, config: PipelineConfig) -> Self {
        let fused = build_social_graph(&corpus, &config.graph);
        ExpertIndex {
            corpus,
            fused,
            config,
        }
    }

    pub fn load(corpus_dir: &Path, mode: ParseMode, config: PipelineConfig) -> Result<Self> {
        Ok(Self::build(Corpus::load_dir(corpus_dir, mode)?, config))
    }

    pub fn persons(&self) -> &[Person] {
        &self.fused.resolution.persons
    }

    pub fn person(&self, person_id: &str) -> Option<&Person> {
        self.fused.resolution.person(person_id)
    }

    pub fn profile(&self, profile_id: &str) -> Option<&Profile> {
        self.corpus
            .profiles
            .iter()
            .find(|p| p.profile_id == profile_id)
    }

    pub fn taxonomy(&self) -> &CategoryTaxonomy {
        &self.corpus.taxonomy
    }

    /// Publications crediting `person_id`, in corpus order.
    pub fn publications_of(&self, person_id: &str) -> Vec<&Publication> {
        let map = &self.fused.resolution.person_map;
        self.corpus
            .publications
            .iter()
            .filter(|p| map.authors_of(p).contains(&person_id))
            .collect()
    }

    /// Features for one category, or `None` if the taxonomy lacks it.
    pub fn category_features(
        &self,
        category_id: &str,
        votes: impl Fn(&str) -> i64,
    ) -> Option<Vec<FeatureVector>> {
        if !self.corpus.taxonomy.contains(category_id) {
            return None;
        }
        Some(category_features(
            &self.fused.graph,
            category_id,
            &self.corpus.publications,
            &self.fused.resolution.person_map,
            &self.corpus.journal_ranks,
            &self.config.centrality,
            votes,
        ))
    }

    pub fn feature_table(&self, votes: impl Fn(&str) -> i64) -> FeatureTable {
        self.corpus
            .taxonomy
            .categories()
            .iter()
            .map(|c| {
                let f = self
                    .category_features(&c.category_id, &votes)
                    .expect("category from taxonomy");
                (c.category_id.clone(), f)
            })
            .collect()
    }

    /// Writes the index files into `out_dir`, creating it if needed.
    pub fn write(&self, out_dir: &Path, votes: &VoteStore) -> Result<()> {
        fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        let write = |name: &str, text: String| -> Result<()> {
            let path = out_dir.join(name);
            fs::write(&path, text).map_err(|e| Error::io(&path, e))
        };
        write(PERSONS_FILE, format_persons(self.persons()))?;
        write(GRAPH_FILE, format_edge_list(&self.fused.graph))?;
        let table = self.feature_table(|p| votes.tally(p));
        write(FEATURES_FILE, format_feature_dump(table.values().flatten()))?;
        write(
            crate::corpus::TAXONOMY_FILE,
            format_taxonomy(&self.corpus.taxonomy),
        )?;
        write(STATS_FILE, graph_stats(&self.fused.graph).to_string())?;
        Ok(())
    }
}

pub fn format_persons(persons: &[Person]) -> String {
    let mut out = String::new();
    for p in persons {
        let _ = writeln!(
            out,
            "{}|{}|{}|{}|{}",
            p.person_id,
            p.display_name,
            p.profile_id.as_deref().unwrap_or(""),
            p.academic_status,
            p.total_reader_count
        );
    }
    out
}

fn parse_persons(text: &str, path: &Path) -> Result<Vec<Person>> {
    let bad = |line: usize, message: String| Error::IndexFormat {
        path: path.display().to_string(),
        message: format!("line {line}: {message}"),
    };
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split('|').collect();
        let [id, name, profile, status, readers] = parts.as_slice() else {
            return Err(bad(
                i + 1,
                format!("expected 5 fields, found {}", parts.len()),
            ));
        };
        out.push(Person {
            person_id: id.to_string(),
            display_name: name.to_string(),
            profile_id: (!profile.is_empty()).then(|| profile.to_string()),
            academic_status: status
                .parse()
                .map_err(|e: crate::corpus::UnknownStatus| bad(i + 1, e.to_string()))?,
            total_reader_count: readers
                .parse()
                .map_err(|_| bad(i + 1, format!("bad reader count `{readers}`")))?,
            vote_tally: 0,
        });
    }
    out.sort_by(|a, b| a.person_id.cmp(&b.person_id));
    Ok(out)
}

/// An index directory read back from disk.
#[derive(Debug, Clone)]
pub struct IndexSnapshot {
    pub dir: PathBuf,
    pub persons: Vec<Person>,
    pub taxonomy: CategoryTaxonomy,
    pub features: FeatureTable,
}

impl IndexSnapshot {
    pub fn open(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<(String, PathBuf)> {
            let path = dir.join(name);
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            Ok((text, path))
        };
        let (text, path) = read(PERSONS_FILE)?;
        let persons = parse_persons(&text, &path)?;
        let (text, path) = read(crate::corpus::TAXONOMY_FILE)?;
        let taxonomy = parse_taxonomy(&text, &path.display().to_string(), ParseMode::Strict)?.items;
        let (text, path) = read(FEATURES_FILE)?;
        let dump = parse_feature_dump(&text).map_err(|(line, message)| Error::IndexFormat {
            path: path.display().to_string(),
            message: format!("line {line}: {message}"),
        })?;
        let mut features: FeatureTable = taxonomy
            .categories()
            .iter()
            .map(|c| (c.category_id.clone(), Vec::new()))
            .collect();
        for f in dump {
            match features.get_mut(&f.category_id) {
                Some(list) => list.push(f),
                None => {
                    return Err(Error::IndexFormat {
                        path: path.display().to_string(),
                        message: format!("unknown category `{}`", f.category_id),
                    })
                }
            }
        }
        Ok(IndexSnapshot {
            dir: dir.to_path_buf(),
            persons,
            taxonomy,
            features,
        })
    }

    pub fn person(&self, person_id: &str) -> Option<&Person> {
        self.persons
            .binary_search_by(|p| p.person_id.as_str().cmp(person_id))
            .ok()
            .map(|i| &self.persons[i])
    }

    pub fn status_of(&self, person_id: &str) -> AcademicStatus {
        self.person(person_id)
            .map(|p| p.academic_status)
            .unwrap_or(AcademicStatus::Other)
    }

    pub fn votes(&self) -> Result<VoteStore> {
        Ok(VoteStore::open(&self.dir.join(VOTES_FILE))?)
    }

    /// The feature table with `user_rank` replaced by current tallies.
    pub fn features_with_votes(&self, votes: &VoteStore) -> FeatureTable {
        apply_votes(&self.features, votes)
    }
}

pub fn apply_votes(table: &FeatureTable, votes: &VoteStore) -> FeatureTable {
    table
        .iter()
        .map(|(c, list)| {
            let list = list
                .iter()
                .cloned()
                .map(|mut f| {
                    f.user_rank = votes.tally(&f.person_id);
                    f
                })
                .collect();
            (c.clone(), list)
        })
        .collect()
}

/// Finds the person a label refers to: a person id, then a profile id, then
/// a display name that normalizes to a single person.
pub fn resolve_person_ref<'a>(persons: &'a [Person], person_ref: &str) -> Option<&'a str> {
    if let Some(p) = persons.iter().find(|p| p.person_id == person_ref) {
        return Some(&p.person_id);
    }
    if let Some(p) = persons
        .iter()
        .find(|p| p.profile_id.as_deref() == Some(person_ref))
    {
        return Some(&p.person_id);
    }
    let wanted = normalize_name(person_ref);
    let mut named = persons
        .iter()
        .filter(|p| normalize_name(&p.display_name) == wanted);
    match (named.next(), named.next()) {
        (Some(p), None) => Some(&p.person_id),
        _ => None,
    }
}

/// Pairs each label with its person's feature vector. Unresolvable labels
/// are errors when `strict`, otherwise skipped with a warning.
pub fn training_set(
    labels: &[TrainingLabel],
    persons: &[Person],
    features: &FeatureTable,
    strict: bool,
) -> Result<Vec<(FeatureVector, bool)>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, label) in labels.iter().enumerate() {
        let problem = |message: String| Error::Label {
            line: i + 1,
            message,
        };
        let found = resolve_person_ref(persons, &label.person_ref)
            .ok_or_else(|| problem(format!("cannot resolve person `{}`", label.person_ref)))
            .and_then(|person| {
                features
                    .get(&label.category_id)
                    .ok_or_else(|| problem(format!("unknown category `{}`", label.category_id)))?
                    .iter()
                    .find(|f| f.person_id == person)
                    .ok_or_else(|| {
                        problem(format!(
                            "`{}` has no publications in `{}`",
                            label.person_ref, label.category_id
                        ))
                    })
            });
        match found {
            Ok(f) => {
                if seen.insert((f.person_id.clone(), f.category_id.clone())) {
                    out.push((f.clone(), label.is_expert));
                } else {
                    log::warn!("label {}: duplicate label ignored", i + 1);
                }
            }
            Err(e) if strict => return Err(e),
            Err(e) => log::warn!("{e}; skipped"),
        }
    }
    Ok(out)
}
