//! Hit-count backends: a local phrase-search index over a tokenized corpus
//! and a recorded-fixture store for exact replay, behind one trait.
//!
//! Counting is in matching *sentences*. Matching is case-insensitive over
//! word tokens, and corpus punctuation tokens are transparent: they are
//! skipped when the query phrase is laid against the sentence, the way
//! search engines ignore punctuation.

mod fixture;
mod index;

pub use fixture::{CachingBackend, FixtureStore, JitterBackend};
pub use index::LocalIndex;

use crate::querygen::PhraseQuery;
use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Result of one query: the number of matching sentences and up to one
/// snippet batch of their texts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitResult {
    pub count: u64,
    pub snippets: Vec<String>,
    /// Served from a write-through cache rather than the live backend.
    #[serde(default)]
    pub from_cache: bool,
}

impl HitResult {
    pub fn empty() -> Self {
        HitResult {
            count: 0,
            snippets: Vec::new(),
            from_cache: false,
        }
    }

    /// Enforce the snippet invariants: no snippets without hits, and never
    /// more snippets than hits or than requested.
    pub(crate) fn clamped(mut self, k: usize) -> Self {
        let cap = (self.count as usize).min(k);
        self.snippets.truncate(cap);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BackendCapabilities {
    /// Alternations inside a quoted phrase are honored.
    pub supports_alternation: bool,
    /// Snippets returned per query.
    pub snippet_batch: usize,
    /// Counts are exact rather than engine estimates.
    pub exact_counts: bool,
}

impl Default for BackendCapabilities {
    fn default() -> Self {
        BackendCapabilities {
            supports_alternation: true,
            snippet_batch: 10,
            exact_counts: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("fixture has no entry for query `{0}`")]
    FixtureMiss(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed fixture line")]
    MalformedFixture { path: String, line: usize },
    #[error("not an index file: {0}")]
    BadIndexFile(String),
}

/// A source of hit counts and snippets for canonical phrase queries.
pub trait CountBackend: Send + Sync {
    /// Count matches and return up to `k` snippets.
    fn search(&self, query: &PhraseQuery, k: usize) -> Result<HitResult, CorpusError>;

    fn capabilities(&self) -> BackendCapabilities;

    fn name(&self) -> &str;

    fn count(&self, query: &PhraseQuery) -> Result<u64, CorpusError> {
        Ok(self.search(query, 0)?.count)
    }

    fn snippets(&self, query: &PhraseQuery, k: usize) -> Result<Vec<String>, CorpusError> {
        Ok(self.search(query, k)?.snippets)
    }
}

impl<B: CountBackend + ?Sized> CountBackend for &B {
    fn search(&self, query: &PhraseQuery, k: usize) -> Result<HitResult, CorpusError> {
        (**self).search(query, k)
    }
    fn capabilities(&self) -> BackendCapabilities {
        (**self).capabilities()
    }
    fn name(&self) -> &str {
        (**self).name()
    }
}

/// Is this corpus token transparent to phrase matching?
pub fn is_punct_token(tok: &str) -> bool {
    !tok.chars().any(|c| c.is_alphanumeric())
}

static SENTENCE_BOUNDARY: Lazy<Regex> = Lazy::new(|| {
    // Start of text, or sentence-final punctuation plus closing quotes.
    Regex::new(r#"(?:^|[.!?]["')\u{201D}\u{2019}]*\s+)$"#).unwrap()
});

/// Fraction of snippets where the query's word sequence, first word
/// capitalized, occurs at the start of a sentence. The check is a
/// case-sensitive regular expression derived from the query; zero when no
/// snippets were returned.
pub fn validate_what_cleft(snippets: &[String], query: &PhraseQuery) -> f64 {
    if snippets.is_empty() {
        return 0.0;
    }
    let mut pattern = String::new();
    for (i, slot) in query.slots.iter().enumerate() {
        if i > 0 {
            pattern.push_str(r"\s+");
        }
        let mut forms: Vec<String> = slot.forms().iter().map(|w| regex::escape(w)).collect();
        if i == 0 {
            forms = forms.iter().map(|w| capitalize(w)).collect();
        }
        pattern.push_str(&format!("(?:{})", forms.join("|")));
    }
    let re = match Regex::new(&pattern) {
        Ok(re) => re,
        Err(_) => return 0.0,
    };
    let valid = snippets
        .iter()
        .filter(|s| {
            re.find_iter(s)
                .any(|m| SENTENCE_BOUNDARY.is_match(&s[..m.start()]))
        })
        .count();
    valid as f64 / snippets.len() as f64
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}
