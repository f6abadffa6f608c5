//! End-to-end classification: bracketed parses in, one auditable record per
//! `it` instance out.
//!
//! Sentences are classified in parallel; the output order always follows
//! the input order, so runs are deterministic for a fixed configuration.

use crate::corpus::{CorpusError, CountBackend};
use crate::decision::{
    classify_instance, evaluate_bundle, EvidenceOptions, InstanceRecord, ReadingOutcome,
    ReadingReport,
};
use crate::filters::{evaluate_reading, FilterConfig, SyntacticVerdict};
use crate::querygen::{build_bundle, EngineMode, QuerygenError, StubSet};
use crate::treebank::{
    find_it_instances, generate_readings, parse_bracketed, to_dependency, DepTree, HeadTable,
    ParseTree, TreebankError,
};
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Treebank(#[from] TreebankError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Querygen(#[from] QuerygenError),
}

/// Everything the classifier needs besides the backend.
#[derive(Debug, Clone, Default)]
pub struct Pipeline {
    pub head_table: HeadTable,
    pub filters: FilterConfig,
    pub stubs: StubSet,
    pub evidence: EvidenceOptions,
    /// Generate the missing-object probes alongside the main patterns.
    pub pattern3: bool,
    pub system_tag: String,
}

impl Pipeline {
    pub fn new() -> Self {
        Pipeline {
            head_table: HeadTable::default(),
            filters: FilterConfig::default(),
            stubs: StubSet::default(),
            evidence: EvidenceOptions::default(),
            pattern3: false,
            system_tag: "pleonit".to_string(),
        }
    }

    fn engine_mode<B: CountBackend>(&self, backend: &B) -> EngineMode {
        if backend.capabilities().supports_alternation {
            EngineMode::Alternation
        } else {
            EngineMode::SimpleForms
        }
    }

    /// Classify every `it` instance of one dependency tree.
    pub fn classify_dep<B: CountBackend>(
        &self,
        dep: &DepTree,
        sentence_id: &str,
        backend: &B,
    ) -> Result<Vec<InstanceRecord>, PipelineError> {
        let mode = self.engine_mode(backend);
        let mut records = Vec::new();
        for inst in find_it_instances(dep, sentence_id) {
            let mut reports = Vec::new();
            match generate_readings(&inst, dep) {
                Err(_) => {
                    // Parse defect: no governing verb. Referential by
                    // default.
                    reports.push(ReadingReport {
                        matrix_verb: String::new(),
                        virtual_copula: false,
                        parenthetical: false,
                        outcome: ReadingOutcome::ParseDefect,
                    });
                }
                Ok(readings) => {
                    for reading in &readings {
                        let outcome = match evaluate_reading(reading, dep, &self.filters) {
                            SyntacticVerdict::WeatherTime => ReadingOutcome::WeatherTime,
                            SyntacticVerdict::Cleft(cue) => ReadingOutcome::Cleft { cue },
                            SyntacticVerdict::None(reason) => {
                                ReadingOutcome::FilteredOut { reason }
                            }
                            SyntacticVerdict::ExtrapositionCandidate(candidate) => {
                                let bundle = build_bundle(
                                    &candidate,
                                    dep,
                                    &self.stubs,
                                    mode,
                                    self.pattern3,
                                )?;
                                let evidence = evaluate_bundle(
                                    &bundle,
                                    candidate.s_flag,
                                    backend,
                                    &self.evidence,
                                )?;
                                ReadingOutcome::Extraposition {
                                    evidence: Box::new(evidence),
                                }
                            }
                        };
                        reports.push(ReadingReport {
                            matrix_verb: reading.matrix_surface(dep).to_string(),
                            virtual_copula: reading.virtual_copula,
                            parenthetical: reading.parenthetical,
                            outcome,
                        });
                    }
                }
            }
            let label = classify_instance(&reports);
            records.push(InstanceRecord {
                sentence_id: inst.sentence_id.clone(),
                token_index: inst.token_index,
                token: dep.token(inst.token_index).to_string(),
                role: inst.role,
                label,
                system: self.system_tag.clone(),
                readings: reports,
            });
        }
        Ok(records)
    }

    /// Classify a batch of parsed sentences concurrently; records come back
    /// in sentence order.
    pub fn classify_trees<B: CountBackend>(
        &self,
        trees: &[ParseTree],
        ids: &[String],
        backend: &B,
    ) -> Result<Vec<InstanceRecord>, PipelineError> {
        debug_assert_eq!(trees.len(), ids.len());
        let per_sentence: Result<Vec<Vec<InstanceRecord>>, PipelineError> = trees
            .par_iter()
            .zip(ids.par_iter())
            .map(|(tree, id)| {
                let dep = to_dependency(tree, &self.head_table);
                self.classify_dep(&dep, id, backend)
            })
            .collect();
        Ok(per_sentence?.into_iter().flatten().collect())
    }

    /// Parse bracketed text and classify it. Sentence ids come from the
    /// id map (line number → id) when given, else `<source>:<line>`.
    pub fn classify_text<B: CountBackend>(
        &self,
        text: &str,
        source: &str,
        id_map: Option<&HashMap<usize, String>>,
        backend: &B,
    ) -> Result<Vec<InstanceRecord>, PipelineError> {
        let trees = parse_bracketed(text)?;
        let ids: Vec<String> = (1..=trees.len())
            .map(|n| match id_map.and_then(|m| m.get(&n)) {
                Some(id) => id.clone(),
                None => format!("{source}:{n:03}"),
            })
            .collect();
        self.classify_trees(&trees, &ids, backend)
    }
}

/// Parse a sentence-id sidecar file: `line_number<TAB>article:sentence`.
pub fn parse_id_map(text: &str) -> Result<HashMap<usize, String>, String> {
    let mut map = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (num, id) = line
            .split_once('\t')
            .ok_or_else(|| format!("line {}: expected `line<TAB>id`", n + 1))?;
        let num: usize = num
            .trim()
            .parse()
            .map_err(|_| format!("line {}: bad line number `{num}`", n + 1))?;
        map.insert(num, id.trim().to_string());
    }
    Ok(map)
}
