//! Line-oriented corpus file formats.
//!
//! Every file is UTF-8, one record per line. Blank lines and lines starting
//! with `#` are ignored. Field grammars:
//!
//! | file             | grammar                                                              |
//! |------------------|----------------------------------------------------------------------|
//! | profiles         | `profile_id\|display_name\|status\|source\|interest;interest;...`    |
//! | publications     | `pub_id\|title\|author;...\|journal\|category_id\|readers\|st:n;...` |
//! | profile edges    | `id_a,id_b`                                                          |
//! | journal ranks    | `journal_name,rank`                                                  |
//! | taxonomy         | `category_id\|label\|word;word;...`                                  |
//! | training labels  | `person_ref,category_id,0\|1`                                        |
//! | groups           | `group_id\|member;member;...`                                        |

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::types::*;
use super::IngestError;

/// How malformed records are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// First malformed line aborts the load.
    #[default]
    Strict,
    /// Malformed lines are skipped and reported as warnings.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineWarning {
    pub line: usize,
    pub message: String,
}

/// Records parsed from one file, plus the lines skipped in lenient mode.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub items: T,
    pub warnings: Vec<LineWarning>,
}

impl<T> Loaded<T> {
    fn new(items: T, warnings: Vec<LineWarning>) -> Self {
        Loaded { items, warnings }
    }
}

fn read(path: &Path) -> Result<String, IngestError> {
    fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn file_name(path: &Path) -> String {
    path.display().to_string()
}

/// Yields `(1-based line number, content)` for every record line.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

struct Sink<'a> {
    file: &'a str,
    mode: ParseMode,
    warnings: Vec<LineWarning>,
}

impl<'a> Sink<'a> {
    fn new(file: &'a str, mode: ParseMode) -> Self {
        Sink {
            file,
            mode,
            warnings: Vec::new(),
        }
    }

    /// Routes a record-level problem according to the mode.
    fn fail(&mut self, line: usize, message: String) -> Result<(), IngestError> {
        match self.mode {
            ParseMode::Strict => Err(IngestError::Parse {
                file: self.file.to_string(),
                line,
                message,
            }),
            ParseMode::Lenient => {
                log::warn!("{}:{line}: skipping record: {message}", self.file);
                self.warnings.push(LineWarning { line, message });
                Ok(())
            }
        }
    }

    fn duplicate(
        &mut self,
        what: &'static str,
        id: &str,
        first: usize,
        second: usize,
    ) -> Result<(), IngestError> {
        match self.mode {
            ParseMode::Strict => Err(IngestError::Duplicate {
                file: self.file.to_string(),
                what,
                id: id.to_string(),
                first,
                second,
            }),
            ParseMode::Lenient => self.fail(
                second,
                format!("duplicate {what} `{id}` (first seen on line {first})"),
            ),
        }
    }
}

fn split_list(field: &str) -> Vec<String> {
    field
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn fields<const N: usize>(line: &str, sep: char) -> Result<[&str; N], String> {
    let parts: Vec<&str> = line.split(sep).collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} `{sep}`-separated fields, found {}",
            parts.len()
        ));
    }
    let mut out = [""; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.trim();
    }
    Ok(out)
}

fn parse_profile(line: &str) -> Result<Profile, String> {
    let [id, name, status, source, interests] = fields::<5>(line, '|')?;
    if id.is_empty() {
        return Err("empty profile_id".into());
    }
    if name.is_empty() {
        return Err("empty display_name".into());
    }
    Ok(Profile {
        profile_id: id.to_string(),
        display_name: name.to_string(),
        academic_status: status.parse().map_err(|e: UnknownStatus| e.to_string())?,
        source: source.parse()?,
        research_interests: split_list(interests),
    })
}

pub fn parse_profiles(
    text: &str,
    file: &str,
    mode: ParseMode,
) -> Result<Loaded<Vec<Profile>>, IngestError> {
    let mut sink = Sink::new(file, mode);
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::new();
    for (line_no, line) in records(text) {
        match parse_profile(line) {
            Ok(p) => {
                if let Some(&first) = seen.get(&p.profile_id) {
                    sink.duplicate("profile_id", &p.profile_id, first, line_no)?;
                    continue;
                }
                seen.insert(p.profile_id.clone(), line_no);
                out.push(p);
            }
            Err(msg) => sink.fail(line_no, msg)?,
        }
    }
    Ok(Loaded::new(out, sink.warnings))
}

pub fn load_profiles(path: &Path, mode: ParseMode) -> Result<Loaded<Vec<Profile>>, IngestError> {
    parse_profiles(&read(path)?, &file_name(path), mode)
}

fn parse_histogram(field: &str) -> Result<BTreeMap<AcademicStatus, u64>, String> {
    let mut hist = BTreeMap::new();
    for entry in split_list(field) {
        let (status, count) = entry
            .split_once(':')
            .ok_or_else(|| format!("histogram entry `{entry}` is not `status:count`"))?;
        let status: AcademicStatus = status.parse().map_err(|e: UnknownStatus| e.to_string())?;
        let count: i64 = count
            .trim()
            .parse()
            .map_err(|_| format!("bad histogram count `{count}`"))?;
        if count < 0 {
            return Err(format!("negative histogram count for {status}"));
        }
        *hist.entry(status).or_insert(0) += count as u64;
    }
    Ok(hist)
}

fn parse_publication(line: &str) -> Result<Publication, String> {
    let [id, title, authors, journal, category, readers, hist] = fields::<7>(line, '|')?;
    if id.is_empty() {
        return Err("empty pub_id".into());
    }
    let author_names = split_list(authors);
    if author_names.is_empty() {
        return Err("publication has no authors".into());
    }
    let readers: i64 = readers
        .parse()
        .map_err(|_| format!("bad reader_count `{readers}`"))?;
    if readers < 0 {
        return Err(format!("reader_count must be non-negative, got {readers}"));
    }
    let opt = |s: &str| (!s.is_empty()).then(|| s.to_string());
    Ok(Publication {
        pub_id: id.to_string(),
        title: title.to_string(),
        author_names,
        journal: opt(journal),
        category_id: opt(category),
        reader_count: readers as u64,
        reader_status_histogram: parse_histogram(hist)?,
    })
}

pub fn parse_publications(
    text: &str,
    file: &str,
    mode: ParseMode,
) -> Result<Loaded<Vec<Publication>>, IngestError> {
    let mut sink = Sink::new(file, mode);
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::new();
    for (line_no, line) in records(text) {
        match parse_publication(line) {
            Ok(p) => {
                if let Some(&first) = seen.get(&p.pub_id) {
                    sink.duplicate("pub_id", &p.pub_id, first, line_no)?;
                    continue;
                }
                seen.insert(p.pub_id.clone(), line_no);
                out.push(p);
            }
            Err(msg) => sink.fail(line_no, msg)?,
        }
    }
    Ok(Loaded::new(out, sink.warnings))
}

pub fn load_publications(
    path: &Path,
    mode: ParseMode,
) -> Result<Loaded<Vec<Publication>>, IngestError> {
    parse_publications(&read(path)?, &file_name(path), mode)
}

pub fn parse_profile_edges(
    text: &str,
    file: &str,
    mode: ParseMode,
) -> Result<Loaded<ProfileEdgeSet>, IngestError> {
    let mut sink = Sink::new(file, mode);
    let mut out = ProfileEdgeSet::new();
    for (line_no, line) in records(text) {
        let parsed = fields::<2>(line, ',').and_then(|[a, b]| {
            if a.is_empty() || b.is_empty() {
                return Err("empty profile id in edge".to_string());
            }
            ProfileEdge::new(a, b).ok_or_else(|| format!("self-loop on `{a}`"))
        });
        match parsed {
            Ok(edge) => {
                out.insert(edge);
            }
            Err(msg) => sink.fail(line_no, msg)?,
        }
    }
    Ok(Loaded::new(out, sink.warnings))
}

pub fn load_profile_edges(
    path: &Path,
    mode: ParseMode,
) -> Result<Loaded<ProfileEdgeSet>, IngestError> {
    parse_profile_edges(&read(path)?, &file_name(path), mode)
}

pub fn parse_journal_ranks(
    text: &str,
    file: &str,
    mode: ParseMode,
) -> Result<Loaded<JournalRankTable>, IngestError> {
    let mut sink = Sink::new(file, mode);
    let mut table = JournalRankTable::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (line_no, line) in records(text) {
        // Journal names may contain commas; the rank is after the last one.
        let parsed = line
            .rsplit_once(',')
            .ok_or_else(|| "expected `journal_name,rank`".to_string())
            .and_then(|(name, rank)| {
                let name = name.trim();
                if name.is_empty() {
                    return Err("empty journal name".to_string());
                }
                let rank: f64 = rank
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad rank `{}`", rank.trim()))?;
                if !(0.0..=1.0).contains(&rank) {
                    return Err(format!("journal rank {rank} outside [0, 1]"));
                }
                Ok((name, rank))
            });
        match parsed {
            Ok((name, rank)) => {
                let key = crate::name_match::normalize_name(name);
                if let Some(&first) = seen.get(&key) {
                    sink.duplicate("journal", name, first, line_no)?;
                    continue;
                }
                seen.insert(key, line_no);
                table.insert(name, rank).expect("range checked above");
            }
            Err(msg) => sink.fail(line_no, msg)?,
        }
    }
    Ok(Loaded::new(table, sink.warnings))
}

pub fn load_journal_ranks(
    path: &Path,
    mode: ParseMode,
) -> Result<Loaded<JournalRankTable>, IngestError> {
    parse_journal_ranks(&read(path)?, &file_name(path), mode)
}

pub fn parse_taxonomy(
    text: &str,
    file: &str,
    mode: ParseMode,
) -> Result<Loaded<CategoryTaxonomy>, IngestError> {
    let mut sink = Sink::new(file, mode);
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut categories = Vec::new();
    for (line_no, line) in records(text) {
        let parsed = fields::<3>(line, '|').and_then(|[id, label, words]| {
            if id.is_empty() {
                return Err("empty category_id".to_string());
            }
            if label.is_empty() {
                return Err(format!("category `{id}` has an empty label"));
            }
            let vocabulary = split_list(words);
            if vocabulary.is_empty() {
                return Err(format!("category `{id}` has an empty vocabulary"));
            }
            Ok(Category {
                category_id: id.to_string(),
                label: label.to_string(),
                vocabulary,
            })
        });
        match parsed {
            Ok(c) => {
                if let Some(&first) = seen.get(&c.category_id) {
                    sink.duplicate("category_id", &c.category_id, first, line_no)?;
                    continue;
                }
                seen.insert(c.category_id.clone(), line_no);
                categories.push(c);
            }
            Err(msg) => sink.fail(line_no, msg)?,
        }
    }
    if categories.is_empty() {
        return Err(IngestError::Invalid {
            file: file.to_string(),
            message: "taxonomy has no categories".into(),
        });
    }
    let taxonomy = CategoryTaxonomy::new(categories).map_err(|message| IngestError::Invalid {
        file: file.to_string(),
        message,
    })?;
    Ok(Loaded::new(taxonomy, sink.warnings))
}

pub fn load_taxonomy(
    path: &Path,
    mode: ParseMode,
) -> Result<Loaded<CategoryTaxonomy>, IngestError> {
    parse_taxonomy(&read(path)?, &file_name(path), mode)
}

pub fn parse_training_labels(
    text: &str,
    file: &str,
    mode: ParseMode,
) -> Result<Loaded<Vec<TrainingLabel>>, IngestError> {
    let mut sink = Sink::new(file, mode);
    let mut out = Vec::new();
    for (line_no, line) in records(text) {
        let parsed = fields::<3>(line, ',').and_then(|[person, category, flag]| {
            if person.is_empty() || category.is_empty() {
                return Err("empty person_ref or category_id".to_string());
            }
            let is_expert = match flag {
                "1" => true,
                "0" => false,
                other => return Err(format!("label must be 0 or 1, got `{other}`")),
            };
            Ok(TrainingLabel {
                person_ref: person.to_string(),
                category_id: category.to_string(),
                is_expert,
            })
        });
        match parsed {
            Ok(l) => out.push(l),
            Err(msg) => sink.fail(line_no, msg)?,
        }
    }
    Ok(Loaded::new(out, sink.warnings))
}

pub fn load_training_labels(
    path: &Path,
    mode: ParseMode,
) -> Result<Loaded<Vec<TrainingLabel>>, IngestError> {
    parse_training_labels(&read(path)?, &file_name(path), mode)
}

pub fn parse_groups(
    text: &str,
    file: &str,
    mode: ParseMode,
) -> Result<Loaded<Vec<Group>>, IngestError> {
    let mut sink = Sink::new(file, mode);
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::new();
    for (line_no, line) in records(text) {
        match fields::<2>(line, '|') {
            Ok([id, members]) if !id.is_empty() => {
                if let Some(&first) = seen.get(id) {
                    sink.duplicate("group_id", id, first, line_no)?;
                    continue;
                }
                seen.insert(id.to_string(), line_no);
                out.push(Group {
                    group_id: id.to_string(),
                    members: split_list(members),
                });
            }
            Ok(_) => sink.fail(line_no, "empty group_id".into())?,
            Err(msg) => sink.fail(line_no, msg)?,
        }
    }
    Ok(Loaded::new(out, sink.warnings))
}

pub fn load_groups(path: &Path, mode: ParseMode) -> Result<Loaded<Vec<Group>>, IngestError> {
    parse_groups(&read(path)?, &file_name(path), mode)
}

// Writers. Each produces text that the matching parser reads back unchanged.

pub fn format_profiles(profiles: &[Profile]) -> String {
    let mut out = String::new();
    for p in profiles {
        let _ = writeln!(
            out,
            "{}|{}|{}|{}|{}",
            p.profile_id,
            p.display_name,
            p.academic_status,
            p.source.as_str(),
            p.research_interests.join(";")
        );
    }
    out
}

pub fn format_publications(publications: &[Publication]) -> String {
    let mut out = String::new();
    for p in publications {
        let hist: Vec<String> = p
            .reader_status_histogram
            .iter()
            .map(|(s, n)| format!("{s}:{n}"))
            .collect();
        let _ = writeln!(
            out,
            "{}|{}|{}|{}|{}|{}|{}",
            p.pub_id,
            p.title,
            p.author_names.join(";"),
            p.journal.as_deref().unwrap_or(""),
            p.category_id.as_deref().unwrap_or(""),
            p.reader_count,
            hist.join(";")
        );
    }
    out
}

pub fn format_profile_edges(edges: &ProfileEdgeSet) -> String {
    let mut out = String::new();
    for e in edges {
        let _ = writeln!(out, "{},{}", e.a(), e.b());
    }
    out
}

pub fn format_journal_ranks(table: &JournalRankTable) -> String {
    let mut out = String::new();
    for (name, rank) in table.iter() {
        let _ = writeln!(out, "{name},{rank}");
    }
    out
}

pub fn format_taxonomy(taxonomy: &CategoryTaxonomy) -> String {
    let mut out = String::new();
    for c in taxonomy.categories() {
        let _ = writeln!(
            out,
            "{}|{}|{}",
            c.category_id,
            c.label,
            c.vocabulary.join(";")
        );
    }
    out
}

pub fn format_training_labels(labels: &[TrainingLabel]) -> String {
    let mut out = String::new();
    for l in labels {
        let _ = writeln!(
            out,
            "{},{},{}",
            l.person_ref,
            l.category_id,
            u8::from(l.is_expert)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_line_maps_fields() {
        let loaded = parse_profiles(
            "p1|Ada Lovelace|professor|mendeley|computing;logic\n",
            "profiles.txt",
            ParseMode::Strict,
        )
        .unwrap();
        assert_eq!(
            loaded.items,
            vec![Profile {
                profile_id: "p1".into(),
                display_name: "Ada Lovelace".into(),
                academic_status: AcademicStatus::Professor,
                research_interests: vec!["computing".into(), "logic".into()],
                source: ProfileSource::Mendeley,
            }]
        );
    }

    #[test]
    fn empty_profile_file() {
        let loaded = parse_profiles("", "profiles.txt", ParseMode::Strict).unwrap();
        assert!(loaded.items.is_empty());
        let loaded = parse_profiles("# only a comment\n\n", "p", ParseMode::Strict).unwrap();
        assert!(loaded.items.is_empty());
    }

    #[test]
    fn duplicate_profile_names_both_lines() {
        let text = "p1|A|other|mendeley|\n# c\np1|B|other|academia|\n";
        let err = parse_profiles(text, "profiles.txt", ParseMode::Strict).unwrap_err();
        match err {
            IngestError::Duplicate {
                first,
                second,
                ref id,
                ..
            } => {
                assert_eq!((first, second), (1, 3));
                assert_eq!(id, "p1");
            }
            other => panic!("unexpected {other:?}"),
        }
        let msg = err.to_string();
        assert!(msg.contains("lines 1 and 3"), "{msg}");
    }

    #[test]
    fn lenient_mode_skips_bad_lines() {
        let text = "p1|A|other|mendeley|\np2|B|wizard|mendeley|\np3|C|postdoc|academia|x\n";
        assert!(matches!(
            parse_profiles(text, "f", ParseMode::Strict),
            Err(IngestError::Parse { line: 2, .. })
        ));
        let loaded = parse_profiles(text, "f", ParseMode::Lenient).unwrap();
        assert_eq!(loaded.items.len(), 2);
        assert_eq!(loaded.warnings.len(), 1);
        assert_eq!(loaded.warnings[0].line, 2);
    }

    #[test]
    fn publication_fields() {
        let text = "x1|Title|A;B;C|Nature|ir|12|professor:3;phd_student:4\n\
                    x2|Other|D||ir|0|\n";
        let pubs = parse_publications(text, "f", ParseMode::Strict)
            .unwrap()
            .items;
        assert_eq!(pubs[0].author_names.len(), 3);
        assert_eq!(pubs[0].journal.as_deref(), Some("Nature"));
        assert_eq!(
            pubs[0].reader_status_histogram[&AcademicStatus::PhdStudent],
            4
        );
        assert_eq!(pubs[1].journal, None);
        assert!(pubs[1].reader_status_histogram.is_empty());
    }

    #[test]
    fn negative_reader_count_rejected() {
        let err = parse_publications("x1|T|A||ir|-1|\n", "f", ParseMode::Strict).unwrap_err();
        assert!(err.to_string().contains("non-negative"), "{err}");
    }

    #[test]
    fn publication_without_authors_rejected() {
        assert!(parse_publications("x1|T| ; ||ir|1|\n", "f", ParseMode::Strict).is_err());
    }

    #[test]
    fn reversed_edges_collapse() {
        let edges = parse_profile_edges("p1,p2\np2,p1\n", "f", ParseMode::Strict)
            .unwrap()
            .items;
        assert_eq!(edges.len(), 1);
        let e = edges.iter().next().unwrap();
        assert_eq!((e.a(), e.b()), ("p1", "p2"));

        let edges = parse_profile_edges("p1,p2\np2,p3\n", "f", ParseMode::Strict)
            .unwrap()
            .items;
        assert_eq!(edges.len(), 2);
    }

    #[test]
    fn self_loop_rejected() {
        let err = parse_profile_edges("p1,p1\n", "f", ParseMode::Strict).unwrap_err();
        assert!(err.to_string().contains("self-loop"));
    }

    #[test]
    fn journal_ranks_normalized_and_range_checked() {
        let table = parse_journal_ranks("Nature,0.98\n", "f", ParseMode::Strict)
            .unwrap()
            .items;
        assert_eq!(table.iter().collect::<Vec<_>>(), vec![("nature", 0.98)]);
        assert_eq!(table.get("NATURE"), Some(0.98));

        let err = parse_journal_ranks("BadJournal,1.5\n", "f", ParseMode::Strict).unwrap_err();
        assert!(err.to_string().contains("outside [0, 1]"), "{err}");
    }

    #[test]
    fn journal_name_with_comma() {
        let table = parse_journal_ranks("Journal of X, Y and Z,0.5\n", "f", ParseMode::Strict)
            .unwrap()
            .items;
        assert_eq!(table.get("journal of x, y and z"), Some(0.5));
    }

    #[test]
    fn empty_taxonomy_is_an_error() {
        assert!(matches!(
            parse_taxonomy("# nothing\n", "taxonomy.txt", ParseMode::Strict),
            Err(IngestError::Invalid { .. })
        ));
        assert!(parse_taxonomy("", "taxonomy.txt", ParseMode::Lenient).is_err());
    }

    #[test]
    fn taxonomy_rejects_empty_vocabulary() {
        assert!(parse_taxonomy("ir|Information Retrieval|\n", "f", ParseMode::Strict).is_err());
    }

    #[test]
    fn training_labels() {
        let labels = parse_training_labels("p1,ir,1\nauthor:x y,ml,0\n", "f", ParseMode::Strict)
            .unwrap()
            .items;
        assert!(labels[0].is_expert);
        assert!(!labels[1].is_expert);
        assert!(parse_training_labels("p1,ir,2\n", "f", ParseMode::Strict).is_err());
    }

    #[test]
    fn groups_parse() {
        let groups = parse_groups("g1|p1;p2;p3\n", "f", ParseMode::Strict)
            .unwrap()
            .items;
        assert_eq!(groups[0].members, vec!["p1", "p2", "p3"]);
    }
}
