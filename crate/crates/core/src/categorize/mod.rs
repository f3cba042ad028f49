//! Free text to ranked category suggestions.
//!
//! Keywords (unigrams and bigrams) are pulled from the text, each keyword is
//! sent to its nearest category by edit distance, and a category scores
//! `Σ weight / (1 + distance)` over the keywords it received.

mod stopwords;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::CategoryTaxonomy;
use crate::name_match::{match_keyword_to_category, EmptyTaxonomy};

pub use stopwords::{is_stopword, STOPWORDS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeywordConfig {
    pub max_keywords: usize,
    pub bigram_boost: f64,
}

impl Default for KeywordConfig {
    fn default() -> Self {
        KeywordConfig {
            max_keywords: 10,
            bigram_boost: 1.5,
        }
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Top keywords by weight, ties broken alphabetically.
///
/// A unigram weighs its frequency. A bigram (two adjacent non-stopword
/// tokens) weighs its frequency times `bigram_boost`.
pub fn extract_keywords(text: &str, config: &KeywordConfig) -> Vec<(String, f64)> {
    let tokens = tokenize(text);
    let mut weights: BTreeMap<String, f64> = BTreeMap::new();
    for t in tokens.iter().filter(|t| !is_stopword(t)) {
        *weights.entry(t.clone()).or_default() += 1.0;
    }
    for pair in tokens.windows(2) {
        if !is_stopword(&pair[0]) && !is_stopword(&pair[1]) {
            *weights
                .entry(format!("{} {}", pair[0], pair[1]))
                .or_default() += config.bigram_boost;
        }
    }
    let mut ranked: Vec<(String, f64)> = weights.into_iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(config.max_keywords);
    ranked
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategorySuggestion {
    pub category_id: String,
    pub label: String,
    pub score: f64,
    pub rank: usize,
}

/// Ranked categories for `text`; empty when no keyword survives extraction.
pub fn suggest_categories(
    text: &str,
    taxonomy: &CategoryTaxonomy,
    max_suggestions: usize,
    config: &KeywordConfig,
) -> Result<Vec<CategorySuggestion>, EmptyTaxonomy> {
    if taxonomy.is_empty() {
        return Err(EmptyTaxonomy);
    }
    let mut scores: BTreeMap<String, f64> = BTreeMap::new();
    for (keyword, weight) in extract_keywords(text, config) {
        let (category, distance) = match_keyword_to_category(&keyword, taxonomy)?;
        *scores.entry(category).or_default() += weight / (1.0 + distance as f64);
    }
    let mut ranked: Vec<(String, f64)> = scores.into_iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(ranked
        .into_iter()
        .take(max_suggestions)
        .enumerate()
        .map(|(i, (category_id, score))| CategorySuggestion {
            label: taxonomy
                .get(&category_id)
                .map(|c| c.label.clone())
                .unwrap_or_default(),
            category_id,
            score,
            rank: i + 1,
        })
        .collect())
}

/// The single best category, as for an "I'm Feeling Lucky" search.
pub fn feeling_lucky(
    text: &str,
    taxonomy: &CategoryTaxonomy,
    config: &KeywordConfig,
) -> Result<Option<CategorySuggestion>, EmptyTaxonomy> {
    Ok(suggest_categories(text, taxonomy, 1, config)?
        .into_iter()
        .next())
}
