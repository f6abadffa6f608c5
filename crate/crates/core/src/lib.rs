//! Detection of pleonastic (non-referential) uses of the pronoun *it* in
//! parsed English sentences.
//!
//! The pipeline reads Penn-Treebank-style constituency parses, converts them
//! to dependency trees by head percolation, and classifies every `it` token:
//!
//! 1. weather/time expressions and *it*-clefts are recognized with syntactic
//!    rules plus small bundled lexicons;
//! 2. extraposition candidates are turned into phrase queries whose hit
//!    counts (from a local corpus index or a recorded fixture) drive a
//!    comparative expletiveness test;
//! 3. the remaining instances default to referential.
//!
//! [`baseline`] replicates the classic bracketing-pattern detector for
//! comparison, and [`evalstats`] scores outputs against gold annotations with
//! bootstrap confidence intervals, approximate randomization tests, and
//! Cohen's kappa.
//!
//! ```
//! use pleonit::corpus::LocalIndex;
//! use pleonit::pipeline::Pipeline;
//! use pleonit::ItLabel;
//!
//! # fn main() -> Result<(), pleonit::pipeline::PipelineError> {
//! let corpus: Vec<String> = (0..12)
//!     .map(|i| format!("It is easy to see why plan {i} failed ."))
//!     .collect();
//! let backend = LocalIndex::build(corpus);
//!
//! let parse = "(S (NP (PRP It)) (VP (VBZ is) (ADJP (JJ easy) (S (VP (TO to) \
//!              (VP (VB see) (SBAR (WHADVP (WRB why)) (S (NP (PRP they)) \
//!              (VP (VBD left))))))))) (. .))";
//! let records = Pipeline::new().classify_text(parse, "demo", None, &backend)?;
//! assert_eq!(records.len(), 1);
//! assert_eq!(records[0].label, ItLabel::Extraposition);
//! # Ok(())
//! # }
//! ```

pub mod baseline;
pub mod corpus;
pub mod decision;
pub mod evalstats;
pub mod filters;
pub mod label;
pub mod pipeline;
pub mod querygen;
pub mod treebank;

pub use label::ItLabel;
