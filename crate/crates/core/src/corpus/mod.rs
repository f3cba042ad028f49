//! Corpus ingestion: profiles, publications, the profile network, journal
//! ranks, the category taxonomy and training labels.

mod parse;
mod types;

use std::path::Path;

pub use parse::*;
pub use types::*;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("{file}: duplicate {what} `{id}` on lines {first} and {second}")]
    Duplicate {
        file: String,
        what: &'static str,
        id: String,
        first: usize,
        second: usize,
    },
    #[error("{file}: {message}")]
    Invalid { file: String, message: String },
    #[error("corpus validation failed: {0}")]
    Validation(CorpusReport),
}

pub const PROFILES_FILE: &str = "profiles.txt";
pub const PUBLICATIONS_FILE: &str = "publications.txt";
pub const EDGES_FILE: &str = "edges.txt";
pub const JOURNAL_RANKS_FILE: &str = "journal_ranks.txt";
pub const TAXONOMY_FILE: &str = "taxonomy.txt";
pub const LABELS_FILE: &str = "labels.txt";
pub const GROUPS_FILE: &str = "groups.txt";

/// Everything loaded from a corpus directory.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub profiles: Vec<Profile>,
    pub publications: Vec<Publication>,
    pub edges: ProfileEdgeSet,
    pub journal_ranks: JournalRankTable,
    pub taxonomy: CategoryTaxonomy,
    /// Present only when the directory has a labels file.
    pub labels: Option<Vec<TrainingLabel>>,
    pub groups: Vec<Group>,
    pub warnings: Vec<(String, LineWarning)>,
}

impl Corpus {
    /// Loads the standard file set from `dir`. The journal rank, labels and
    /// groups files are optional. In strict mode the corpus must also pass
    /// [`validate_corpus`].
    pub fn load_dir(dir: &Path, mode: ParseMode) -> Result<Corpus, IngestError> {
        let mut warnings = Vec::new();
        let mut collect = |file: &str, w: Vec<LineWarning>| {
            warnings.extend(w.into_iter().map(|w| (file.to_string(), w)));
        };

        let profiles = load_profiles(&dir.join(PROFILES_FILE), mode)?;
        collect(PROFILES_FILE, profiles.warnings);
        let publications = load_publications(&dir.join(PUBLICATIONS_FILE), mode)?;
        collect(PUBLICATIONS_FILE, publications.warnings);
        let edges = load_profile_edges(&dir.join(EDGES_FILE), mode)?;
        collect(EDGES_FILE, edges.warnings);
        let taxonomy = load_taxonomy(&dir.join(TAXONOMY_FILE), mode)?;
        collect(TAXONOMY_FILE, taxonomy.warnings);

        let ranks_path = dir.join(JOURNAL_RANKS_FILE);
        let journal_ranks = if ranks_path.exists() {
            let t = load_journal_ranks(&ranks_path, mode)?;
            collect(JOURNAL_RANKS_FILE, t.warnings);
            t.items
        } else {
            JournalRankTable::new()
        };

        let labels_path = dir.join(LABELS_FILE);
        let labels = if labels_path.exists() {
            let l = load_training_labels(&labels_path, mode)?;
            collect(LABELS_FILE, l.warnings);
            Some(l.items)
        } else {
            None
        };

        let groups_path = dir.join(GROUPS_FILE);
        let groups = if groups_path.exists() {
            let g = load_groups(&groups_path, mode)?;
            collect(GROUPS_FILE, g.warnings);
            g.items
        } else {
            Vec::new()
        };

        let corpus = Corpus {
            profiles: profiles.items,
            publications: publications.items,
            edges: edges.items,
            journal_ranks,
            taxonomy: taxonomy.items,
            labels,
            groups,
            warnings,
        };

        let report = validate_corpus(
            &corpus.profiles,
            &corpus.publications,
            &corpus.edges,
            &corpus.taxonomy,
        );
        if !report.is_clean() {
            match mode {
                ParseMode::Strict => return Err(IngestError::Validation(report)),
                ParseMode::Lenient => log::warn!("{report}"),
            }
        }
        Ok(corpus)
    }
}

/// Cross-file consistency summary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub profile_count: usize,
    pub publication_count: usize,
    pub edge_count: usize,
    /// `(pub_id, category_id)` for categories missing from the taxonomy.
    pub unknown_categories: Vec<(String, String)>,
    /// `(edge endpoint a, endpoint b, missing id)`.
    pub dangling_endpoints: Vec<(String, String, String)>,
}

impl CorpusReport {
    pub fn is_clean(&self) -> bool {
        self.unknown_categories.is_empty() && self.dangling_endpoints.is_empty()
    }
}

impl std::fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} profiles, {} publications, {} edges",
            self.profile_count, self.publication_count, self.edge_count
        )?;
        for (p, c) in &self.unknown_categories {
            write!(f, "; publication `{p}` has unknown category `{c}`")?;
        }
        for (a, b, missing) in &self.dangling_endpoints {
            write!(f, "; edge {a},{b} references unknown profile `{missing}`")?;
        }
        Ok(())
    }
}

pub fn validate_corpus(
    profiles: &[Profile],
    publications: &[Publication],
    edges: &ProfileEdgeSet,
    taxonomy: &CategoryTaxonomy,
) -> CorpusReport {
    let known: std::collections::HashSet<&str> =
        profiles.iter().map(|p| p.profile_id.as_str()).collect();

    let unknown_categories = publications
        .iter()
        .filter_map(|p| {
            let c = p.category_id.as_deref()?;
            (!taxonomy.contains(c)).then(|| (p.pub_id.clone(), c.to_string()))
        })
        .collect();

    let dangling_endpoints = edges
        .iter()
        .flat_map(|e| [e.a(), e.b()].map(|end| (e, end)))
        .filter(|(_, end)| !known.contains(end))
        .map(|(e, end)| (e.a().to_string(), e.b().to_string(), end.to_string()))
        .collect();

    CorpusReport {
        profile_count: profiles.len(),
        publication_count: publications.len(),
        edge_count: edges.len(),
        unknown_categories,
        dangling_endpoints,
    }
}
