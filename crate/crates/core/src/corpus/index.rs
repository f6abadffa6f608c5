//! In-memory phrase index over a tokenized corpus (one sentence per line).
//!
//! Sentences are stored with their original text; matching runs over the
//! lowercased word tokens with punctuation tokens removed. A positional
//! postings list per word drives the phrase scan.

use super::{is_punct_token, BackendCapabilities, CorpusError, CountBackend, HitResult};
use crate::querygen::PhraseQuery;
use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

const INDEX_MAGIC: &str = "#pleonit-corpus-index v1";

#[derive(Debug, Clone)]
struct Sentence {
    text: String,
    words: Vec<String>,
}

/// Immutable local search index; counts are exact (`matching sentences`).
#[derive(Debug, Clone)]
pub struct LocalIndex {
    sentences: Vec<Sentence>,
    postings: HashMap<String, Vec<(u32, u32)>>,
}

impl LocalIndex {
    /// Build from sentence lines. An empty corpus yields a valid index on
    /// which every count is zero.
    pub fn build<I: IntoIterator<Item = S>, S: AsRef<str>>(lines: I) -> Self {
        let mut sentences = Vec::new();
        let mut postings: HashMap<String, Vec<(u32, u32)>> = HashMap::new();
        for line in lines {
            let text = line.as_ref().trim();
            if text.is_empty() {
                continue;
            }
            let words: Vec<String> = text
                .split_whitespace()
                .filter(|t| !is_punct_token(t))
                .map(|t| t.to_lowercase())
                .collect();
            let sid = sentences.len() as u32;
            for (pos, w) in words.iter().enumerate() {
                postings
                    .entry(w.clone())
                    .or_default()
                    .push((sid, pos as u32));
            }
            sentences.push(Sentence {
                text: text.to_string(),
                words,
            });
        }
        LocalIndex {
            sentences,
            postings,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, CorpusError> {
        let file = std::fs::File::open(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut lines = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|source| CorpusError::Io {
                path: path.display().to_string(),
                source,
            })?;
            if line.trim() == INDEX_MAGIC {
                continue;
            }
            lines.push(line);
        }
        Ok(LocalIndex::build(lines))
    }

    /// Persist the index. The file keeps one sentence per line under a
    /// header, so it doubles as a normalized corpus.
    pub fn save(&self, path: &Path) -> Result<(), CorpusError> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(|source| {
            CorpusError::Io {
                path: path.display().to_string(),
                source,
            }
        })?);
        let io_err = |source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        };
        writeln!(out, "{INDEX_MAGIC}").map_err(io_err)?;
        for s in &self.sentences {
            writeln!(out, "{}", s.text).map_err(io_err)?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let head = std::fs::File::open(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut first = String::new();
        BufReader::new(head)
            .read_line(&mut first)
            .map_err(|source| CorpusError::Io {
                path: path.display().to_string(),
                source,
            })?;
        if first.trim() != INDEX_MAGIC {
            return Err(CorpusError::BadIndexFile(path.display().to_string()));
        }
        Self::from_file(path)
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    fn matches_at(&self, sid: u32, start: u32, query: &PhraseQuery) -> bool {
        let words = &self.sentences[sid as usize].words;
        for (offset, slot) in query.slots.iter().enumerate() {
            match words.get(start as usize + offset) {
                Some(w) => {
                    if !slot.forms().iter().any(|f| f == w) {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }
}

impl CountBackend for LocalIndex {
    fn search(&self, query: &PhraseQuery, k: usize) -> Result<HitResult, CorpusError> {
        let Some(first) = query.slots.first() else {
            return Ok(HitResult::empty());
        };
        let mut starts: Vec<(u32, u32)> = first
            .forms()
            .iter()
            .flat_map(|f| self.postings.get(f).into_iter().flatten().copied())
            .collect();
        starts.sort_unstable();
        let mut hit_sentences: Vec<u32> = Vec::new();
        for (sid, pos) in starts {
            if hit_sentences.last() == Some(&sid) {
                continue;
            }
            if self.matches_at(sid, pos, query) {
                hit_sentences.push(sid);
            }
        }
        let snippets = hit_sentences
            .iter()
            .take(k)
            .map(|&sid| self.sentences[sid as usize].text.clone())
            .collect();
        Ok(HitResult {
            count: hit_sentences.len() as u64,
            snippets,
            from_cache: false,
        }
        .clamped(k))
    }

    fn capabilities(&self) -> BackendCapabilities {
        BackendCapabilities::default()
    }

    fn name(&self) -> &str {
        "local-index"
    }
}
