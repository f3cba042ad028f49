use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::corpus::{AcademicStatus, Profile, Publication};
use crate::name_match::{match_author_to_profile, normalize_name};

/// A resolved individual: an author, a profile, or both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Person {
    pub person_id: String,
    pub display_name: String,
    pub profile_id: Option<String>,
    pub academic_status: AcademicStatus,
    pub total_reader_count: u64,
    pub vote_tally: i64,
}

/// Maps author name occurrences and profile ids to person ids.
#[derive(Debug, Clone, Default)]
pub struct PersonMap {
    by_author: HashMap<String, String>,
    by_profile: HashMap<String, String>,
}

impl PersonMap {
    pub fn person_for_author(&self, author_name: &str) -> Option<&str> {
        self.by_author
            .get(&normalize_name(author_name))
            .map(String::as_str)
    }

    pub fn person_for_profile(&self, profile_id: &str) -> Option<&str> {
        self.by_profile.get(profile_id).map(String::as_str)
    }

    /// Distinct persons credited on a publication, in author order. Repeated
    /// names collapse to one occurrence.
    pub fn authors_of<'a>(&'a self, publication: &Publication) -> Vec<&'a str> {
        let mut seen = BTreeSet::new();
        publication
            .author_names
            .iter()
            .filter_map(|a| self.person_for_author(a))
            .filter(|id| seen.insert(*id))
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResolutionReport {
    pub distinct_authors: usize,
    pub matched: usize,
    pub discarded_for_tie: usize,
    pub below_threshold: usize,
}

#[derive(Debug, Clone)]
pub struct Resolution {
    /// Sorted by `person_id`.
    pub persons: Vec<Person>,
    pub person_map: PersonMap,
    pub report: ResolutionReport,
}

impl Resolution {
    pub fn person(&self, person_id: &str) -> Option<&Person> {
        self.persons
            .binary_search_by(|p| p.person_id.as_str().cmp(person_id))
            .ok()
            .map(|i| &self.persons[i])
    }
}

const AUTHOR_PREFIX: &str = "author:";

fn author_slug(normalized: &str) -> String {
    normalized
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Links every distinct author name to a profile where possible.
///
/// Profiles become persons keyed by their `profile_id`, whether or not they
/// authored anything. Author names without a unique acceptable match become
/// `author:<slug>` persons with status `other`. Several author spellings that
/// resolve to one profile merge into that profile's person.
pub fn resolve_persons(
    publications: &[Publication],
    profiles: &[Profile],
    threshold: f64,
) -> Resolution {
    // normalized author name -> lexicographically smallest raw spelling
    let mut authors: BTreeMap<String, String> = BTreeMap::new();
    for p in publications {
        for raw in &p.author_names {
            let key = normalize_name(raw);
            authors
                .entry(key)
                .and_modify(|s| {
                    if raw < s {
                        *s = raw.clone();
                    }
                })
                .or_insert_with(|| raw.clone());
        }
    }

    let mut report = ResolutionReport {
        distinct_authors: authors.len(),
        ..Default::default()
    };
    let mut map = PersonMap::default();
    let mut persons: BTreeMap<String, Person> = BTreeMap::new();

    for p in profiles {
        map.by_profile
            .insert(p.profile_id.clone(), p.profile_id.clone());
        persons.insert(
            p.profile_id.clone(),
            Person {
                person_id: p.profile_id.clone(),
                display_name: p.display_name.clone(),
                profile_id: Some(p.profile_id.clone()),
                academic_status: p.academic_status,
                total_reader_count: 0,
                vote_tally: 0,
            },
        );
    }

    let mut used_slugs: BTreeSet<String> = BTreeSet::new();
    for (normalized, raw) in &authors {
        let result = match_author_to_profile(normalized, profiles, threshold);
        let person_id = match result.matched_id {
            Some(profile_id) => {
                report.matched += 1;
                profile_id
            }
            None => {
                if result.discarded_for_tie {
                    report.discarded_for_tie += 1;
                } else if !profiles.is_empty() {
                    report.below_threshold += 1;
                }
                let base = format!("{AUTHOR_PREFIX}{}", author_slug(normalized));
                let mut id = base.clone();
                let mut n = 2;
                while used_slugs.contains(&id) || persons.contains_key(&id) {
                    id = format!("{base}~{n}");
                    n += 1;
                }
                used_slugs.insert(id.clone());
                persons.insert(
                    id.clone(),
                    Person {
                        person_id: id.clone(),
                        display_name: raw.clone(),
                        profile_id: None,
                        academic_status: AcademicStatus::Other,
                        total_reader_count: 0,
                        vote_tally: 0,
                    },
                );
                id
            }
        };
        map.by_author.insert(normalized.clone(), person_id);
    }

    for p in publications {
        for id in map.authors_of(p) {
            if let Some(person) = persons.get_mut(id) {
                person.total_reader_count += p.reader_count;
            }
        }
    }

    Resolution {
        persons: persons.into_values().collect(),
        person_map: map,
        report,
    }
}
