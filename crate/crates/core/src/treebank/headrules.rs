//! The head percolation table: for each phrase label, an ordered list of
//! scanning passes that pick the head child.
//!
//! The table ships as a data file so tests can pin it and users can swap it
//! (`HeadTable::from_str`); [`HeadTable::default`] loads the bundled rules.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use thiserror::Error;

const BUNDLED_RULES: &str = include_str!("../../data/head_rules.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ScanMode {
    /// Try each listed label in priority order; per label, scan children
    /// from the given side.
    PriorityLeft,
    PriorityRight,
    /// Scan children once from the given side, matching against the set.
    PositionalLeft,
    PositionalRight,
}

#[derive(Debug, Clone)]
struct HeadPass {
    mode: ScanMode,
    labels: Vec<String>,
}

/// Maps phrase labels to head-selection passes, with a default for labels
/// that have no rule of their own.
#[derive(Debug, Clone)]
pub struct HeadTable {
    rules: HashMap<String, Vec<HeadPass>>,
}

#[derive(Debug, Error)]
pub enum HeadTableError {
    #[error("line {0}: expected `LABEL MODE CHILD-LABELS...`")]
    Malformed(usize),
    #[error("line {0}: unknown scan mode `{1}`")]
    UnknownMode(usize, String),
    #[error("table has no DEFAULT rule")]
    MissingDefault,
}

static DEFAULT_TABLE: Lazy<HeadTable> =
    Lazy::new(|| HeadTable::parse(BUNDLED_RULES).expect("bundled head rules parse"));

impl Default for HeadTable {
    fn default() -> Self {
        DEFAULT_TABLE.clone()
    }
}

impl HeadTable {
    pub fn parse(text: &str) -> Result<Self, HeadTableError> {
        let mut rules: HashMap<String, Vec<HeadPass>> = HashMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let label = fields.next().ok_or(HeadTableError::Malformed(n + 1))?;
            let mode = match fields.next().ok_or(HeadTableError::Malformed(n + 1))? {
                "l" => ScanMode::PriorityLeft,
                "r" => ScanMode::PriorityRight,
                "lp" => ScanMode::PositionalLeft,
                "rp" => ScanMode::PositionalRight,
                other => return Err(HeadTableError::UnknownMode(n + 1, other.to_string())),
            };
            let labels: Vec<String> = fields.map(str::to_string).collect();
            if labels.is_empty() {
                return Err(HeadTableError::Malformed(n + 1));
            }
            rules
                .entry(label.to_string())
                .or_default()
                .push(HeadPass { mode, labels });
        }
        if !rules.contains_key("DEFAULT") {
            return Err(HeadTableError::MissingDefault);
        }
        Ok(HeadTable { rules })
    }

    /// Index of the head child of a node labelled `parent` with the given
    /// child labels. Never fails: the DEFAULT rule and a final fallback to
    /// the first child guarantee a head.
    pub fn head_child(&self, parent: &str, child_labels: &[&str]) -> usize {
        debug_assert!(!child_labels.is_empty());
        let passes = self
            .rules
            .get(parent)
            .or_else(|| self.rules.get("DEFAULT"))
            .expect("DEFAULT rule present");
        for pass in passes {
            match pass.mode {
                ScanMode::PriorityLeft | ScanMode::PriorityRight => {
                    let right = pass.mode == ScanMode::PriorityRight;
                    for want in &pass.labels {
                        if let Some(i) = scan(child_labels, right, |l| want == "*" || l == want) {
                            return i;
                        }
                    }
                }
                ScanMode::PositionalLeft | ScanMode::PositionalRight => {
                    let right = pass.mode == ScanMode::PositionalRight;
                    if let Some(i) = scan(child_labels, right, |l| {
                        pass.labels.iter().any(|w| w == "*" || w == l)
                    }) {
                        return i;
                    }
                }
            }
        }
        0
    }
}

fn scan(labels: &[&str], from_right: bool, pred: impl Fn(&str) -> bool) -> Option<usize> {
    if from_right {
        (0..labels.len()).rev().find(|&i| pred(labels[i]))
    } else {
        (0..labels.len()).find(|&i| pred(labels[i]))
    }
}
