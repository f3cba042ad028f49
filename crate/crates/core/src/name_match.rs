//! Edit distance and the two matching procedures built on it: linking a
//! publication author to a profile, and picking the category closest to a
//! query keyword.

use crate::corpus::{CategoryTaxonomy, Profile};

/// Default bound on `distance / max(len)` for an author/profile match.
pub const DEFAULT_MATCH_THRESHOLD: f64 = 0.34;

/// Levenshtein distance over Unicode scalar values.
///
/// Two-row dynamic programming, `O(|a|·|b|)` time, `O(|b|)` memory.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }

    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        curr[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let substitute = prev[j] + usize::from(ca != cb);
            curr[j + 1] = substitute.min(prev[j + 1] + 1).min(curr[j] + 1);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Lowercases, drops periods, trims and collapses internal whitespace.
pub fn normalize_name(s: &str) -> String {
    s.to_lowercase()
        .replace('.', "")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub matched_id: Option<String>,
    /// Minimum distance over candidates; `usize::MAX` when there were none.
    pub distance: usize,
    pub discarded_for_tie: bool,
}

impl MatchResult {
    fn no_candidates() -> Self {
        MatchResult {
            matched_id: None,
            distance: usize::MAX,
            discarded_for_tie: false,
        }
    }
}

/// Resolves a publication author against profiles.
///
/// The closest profile by normalized edit distance wins. If two or more
/// profiles share the minimum the link is discarded. A unique winner is still
/// rejected when `distance / max(len)` exceeds `threshold`.
pub fn match_author_to_profile(
    author_name: &str,
    profiles: &[Profile],
    threshold: f64,
) -> MatchResult {
    let author = normalize_name(author_name);
    let mut best: Option<(usize, &Profile, String)> = None;
    let mut tied = false;
    for p in profiles {
        let candidate = normalize_name(&p.display_name);
        let d = levenshtein(&author, &candidate);
        match &best {
            Some((bd, _, _)) if d > *bd => {}
            Some((bd, _, _)) if d == *bd => tied = true,
            _ => {
                best = Some((d, p, candidate));
                tied = false;
            }
        }
    }

    let Some((distance, profile, candidate)) = best else {
        return MatchResult::no_candidates();
    };
    if tied {
        return MatchResult {
            matched_id: None,
            distance,
            discarded_for_tie: true,
        };
    }
    let longest = author.chars().count().max(candidate.chars().count());
    let relative = if longest == 0 {
        0.0
    } else {
        distance as f64 / longest as f64
    };
    MatchResult {
        matched_id: (relative <= threshold).then(|| profile.profile_id.clone()),
        distance,
        discarded_for_tie: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("taxonomy is empty")]
pub struct EmptyTaxonomy;

/// Picks the category owning the vocabulary word nearest to `keyword`.
/// Equal distances across categories go to the smallest `category_id`.
pub fn match_keyword_to_category(
    keyword: &str,
    taxonomy: &CategoryTaxonomy,
) -> Result<(String, usize), EmptyTaxonomy> {
    let keyword = normalize_name(keyword);
    let mut best: Option<(usize, &str)> = None;
    for category in taxonomy.categories() {
        let d = category
            .vocabulary
            .iter()
            .map(|w| levenshtein(&keyword, &normalize_name(w)))
            .min()
            .unwrap_or(usize::MAX);
        let better = match best {
            None => true,
            Some((bd, bid)) => d < bd || (d == bd && category.category_id.as_str() < bid),
        };
        if better {
            best = Some((d, &category.category_id));
        }
    }
    best.map(|(d, id)| (id.to_string(), d)).ok_or(EmptyTaxonomy)
}
