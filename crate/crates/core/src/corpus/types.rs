use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::name_match::normalize_name;

/// Academic status of a person. The search UI exposes exactly these four
/// filter checkboxes; `Other` is the catch-all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcademicStatus {
    Professor,
    Postdoc,
    PhdStudent,
    Other,
}

impl AcademicStatus {
    pub const ALL: [AcademicStatus; 4] = [
        AcademicStatus::Professor,
        AcademicStatus::Postdoc,
        AcademicStatus::PhdStudent,
        AcademicStatus::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AcademicStatus::Professor => "professor",
            AcademicStatus::Postdoc => "postdoc",
            AcademicStatus::PhdStudent => "phd_student",
            AcademicStatus::Other => "other",
        }
    }
}

impl fmt::Display for AcademicStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown academic status `{0}`")]
pub struct UnknownStatus(pub String);

impl FromStr for AcademicStatus {
    type Err = UnknownStatus;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "professor" => Ok(AcademicStatus::Professor),
            "postdoc" => Ok(AcademicStatus::Postdoc),
            "phd_student" => Ok(AcademicStatus::PhdStudent),
            "other" => Ok(AcademicStatus::Other),
            _ => Err(UnknownStatus(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSource {
    Mendeley,
    Academia,
}

impl ProfileSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileSource::Mendeley => "mendeley",
            ProfileSource::Academia => "academia",
        }
    }
}

impl FromStr for ProfileSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mendeley" => Ok(ProfileSource::Mendeley),
            "academia" => Ok(ProfileSource::Academia),
            other => Err(format!("unknown profile source `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub profile_id: String,
    pub display_name: String,
    pub academic_status: AcademicStatus,
    pub research_interests: Vec<String>,
    pub source: ProfileSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Publication {
    pub pub_id: String,
    pub title: String,
    pub author_names: Vec<String>,
    pub journal: Option<String>,
    pub category_id: Option<String>,
    pub reader_count: u64,
    /// Readers broken down by status. May be partial, so the entries need not
    /// add up to `reader_count`.
    pub reader_status_histogram: BTreeMap<AcademicStatus, u64>,
}

/// Undirected friendship between two profiles. Always stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileEdge {
    a: String,
    b: String,
}

impl ProfileEdge {
    /// Returns `None` for a self-loop.
    pub fn new(x: impl Into<String>, y: impl Into<String>) -> Option<Self> {
        let (x, y) = (x.into(), y.into());
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(ProfileEdge { a: x, b: y }),
            std::cmp::Ordering::Greater => Some(ProfileEdge { a: y, b: x }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn a(&self) -> &str {
        &self.a
    }

    pub fn b(&self) -> &str {
        &self.b
    }
}

pub type ProfileEdgeSet = BTreeSet<ProfileEdge>;

/// Journal name (normalized) to rank in `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct JournalRankTable {
    ranks: BTreeMap<String, f64>,
}

impl JournalRankTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a rank, normalizing the journal name. Out-of-range ranks are
    /// rejected.
    pub fn insert(&mut self, journal: &str, rank: f64) -> Result<(), String> {
        if !(0.0..=1.0).contains(&rank) {
            return Err(format!("journal rank {rank} outside [0, 1]"));
        }
        self.ranks.insert(normalize_name(journal), rank);
        Ok(())
    }

    pub fn get(&self, journal: &str) -> Option<f64> {
        self.ranks.get(&normalize_name(journal)).copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.ranks.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Category {
    pub category_id: String,
    pub label: String,
    pub vocabulary: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryTaxonomy {
    categories: Vec<Category>,
}

impl CategoryTaxonomy {
    /// Builds a taxonomy, enforcing unique ids, non-empty labels and
    /// non-empty vocabularies.
    pub fn new(categories: Vec<Category>) -> Result<Self, String> {
        let mut seen = BTreeSet::new();
        for c in &categories {
            if c.category_id.is_empty() {
                return Err("empty category_id".into());
            }
            if !seen.insert(c.category_id.as_str()) {
                return Err(format!("duplicate category_id `{}`", c.category_id));
            }
            if c.label.trim().is_empty() {
                return Err(format!("category `{}` has an empty label", c.category_id));
            }
            if c.vocabulary.is_empty() {
                return Err(format!(
                    "category `{}` has an empty vocabulary",
                    c.category_id
                ));
            }
        }
        Ok(CategoryTaxonomy { categories })
    }

    pub fn categories(&self) -> &[Category] {
        &self.categories
    }

    pub fn get(&self, category_id: &str) -> Option<&Category> {
        self.categories
            .iter()
            .find(|c| c.category_id == category_id)
    }

    pub fn contains(&self, category_id: &str) -> bool {
        self.get(category_id).is_some()
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingLabel {
    pub person_ref: String,
    pub category_id: String,
    pub is_expert: bool,
}

/// A public group and its member profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub group_id: String,
    pub members: Vec<String>,
}
