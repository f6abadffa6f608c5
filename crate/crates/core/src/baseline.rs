//! A replication of the classic bracketing-pattern detector for pleonastic
//! `it`, used as a comparison baseline. It works on the raw token sequence,
//! with no tagging or parsing: `it ... to|that|who|whether` spans within a
//! length limit are checked for a task-status word and for the punctuation
//! restriction (zero or more than one comma/dash/colon inside the span).
//!
//! Word lists and limits are best-effort reconstructions and ship as
//! editable config; treat absolute numbers from this baseline as
//! approximate.

use once_cell::sync::Lazy;
use std::collections::HashSet;

const STATUS_WORDS: &str = include_str!("../data/pha_status_words.txt");

#[derive(Debug, Clone)]
pub struct PhaConfig {
    /// Right-hand bracketing markers paired with `it`.
    pub right_markers: Vec<String>,
    /// A word from this list must occur strictly between `it` and the
    /// marker.
    pub task_status_words: HashSet<String>,
    /// Maximum span length, in tokens, from `it` to the marker.
    pub max_construct_length: usize,
    /// Punctuation tokens counted by the zero-or-more-than-one rule.
    pub counted_punctuation: HashSet<String>,
    /// Verbs after `it` that mark an idiom and exclude the instance
    /// (`it remains to ...`).
    pub idiom_verbs: HashSet<String>,
}

fn set(words: &[&str]) -> HashSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

static DEFAULT_STATUS: Lazy<HashSet<String>> = Lazy::new(|| {
    STATUS_WORDS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
});

impl Default for PhaConfig {
    fn default() -> Self {
        PhaConfig {
            right_markers: ["to", "that", "who", "whether"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            task_status_words: DEFAULT_STATUS.clone(),
            max_construct_length: 25,
            counted_punctuation: set(&[",", "-", "--", ":", ";"]),
            idiom_verbs: set(&["remain", "remains", "remained"]),
        }
    }
}

impl PhaConfig {
    /// Parse a key=value config file; unknown keys are an error.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = PhaConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", n + 1))?;
            let list = || {
                value
                    .split(',')
                    .map(|w| w.trim().to_lowercase())
                    .filter(|w| !w.is_empty())
            };
            match key.trim() {
                "right_markers" => cfg.right_markers = list().collect(),
                "task_status_words" => cfg.task_status_words = list().collect(),
                "max_construct_length" => {
                    cfg.max_construct_length = value
                        .trim()
                        .parse()
                        .map_err(|_| format!("line {}: bad length", n + 1))?
                }
                "counted_punctuation" => cfg.counted_punctuation = list().collect(),
                "idiom_verbs" => cfg.idiom_verbs = list().collect(),
                other => return Err(format!("line {}: unknown key `{other}`", n + 1)),
            }
        }
        Ok(cfg)
    }
}

/// Is the `it` at `it_index` pleonastic according to the bracketing rules?
pub fn pha_classify(tokens: &[String], it_index: usize, cfg: &PhaConfig) -> bool {
    debug_assert!(it_index < tokens.len());
    if let Some(next) = tokens.get(it_index + 1) {
        if cfg.idiom_verbs.contains(&next.to_lowercase()) {
            return false;
        }
    }
    let limit = (it_index + cfg.max_construct_length + 1).min(tokens.len());
    for j in it_index + 1..limit {
        let marker = tokens[j].to_lowercase();
        if !cfg.right_markers.contains(&marker) {
            continue;
        }
        let between = &tokens[it_index + 1..j];
        let has_status = between
            .iter()
            .any(|t| cfg.task_status_words.contains(&t.to_lowercase()));
        if !has_status {
            continue;
        }
        let punct = between
            .iter()
            .filter(|t| cfg.counted_punctuation.contains(*t))
            .count();
        if punct == 1 {
            continue;
        }
        return true;
    }
    false
}
