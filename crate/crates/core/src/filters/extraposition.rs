//! Extraposition candidacy.
//!
//! Subject frames follow `it + matrix verb phrase + extraposed clause`,
//! where a main-copula matrix verb additionally requires an NP/ADJP/PP
//! logical predicate; object frames follow `verb + [preposition] + it +
//! that-clause`. Object-complement readings arrive here with the virtual
//! copula already inserted and are treated as subject frames.

use super::{punctuation_rule_ok, subject_of_multiple_vps, FilterFlags};
use crate::treebank::{Clause, ClauseShape, Comp, DepTree, Frame, Reading};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    CopulaWithPredicate,
    GeneralVerb,
    ObjectOfVerb,
    ObjectOfPreposition,
}

/// The five simplification-relevant shapes of the extraposed clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseForm {
    Infinitive,
    ForInfinitive,
    Gerund,
    FullWithComplementizer,
    FullBare,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapositionCandidate {
    pub reading: Reading,
    pub matrix_kind: MatrixKind,
    /// Head of the logical predicate (copula frames) or truncatable matrix
    /// object (general-verb frames).
    pub predicate: Option<usize>,
    pub clause: Clause,
    pub clause_form: ClauseForm,
    /// Lowercased complementizer for full clauses; bare clauses get "that".
    pub comp_word: Option<String>,
    /// The clause was introduced by an overt relativizer.
    pub overt_relative: bool,
    /// Matches `it verb infinitive`: non-copula matrix with an infinitive
    /// clause (false-positive-prone; gates the classifier on W).
    pub s_flag: bool,
}

/// Why a reading was screened out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterReason {
    /// Does not match any extraposition frame.
    NotViable,
    PunctuationRule,
    PerfectTense,
    MultipleVerbPhrases,
    NpPredicateWithRelative,
    ModalWithIfOrWh,
}

const NOMINAL_PREDICATE_POS: &[&str] = &["NN", "NNS", "NNP", "NNPS", "PRP", "CD", "DT", "EX", "$"];
const ADJECTIVE_POS: &[&str] = &["JJ", "JJR", "JJS"];

/// Match a reading against the subject- or object-extraposition frame.
pub fn filter_extraposition(reading: &Reading, dep: &DepTree) -> Option<ExtrapositionCandidate> {
    match reading.frame {
        Frame::SubjectLike | Frame::ObjectComplement => subject_frame(reading, dep),
        Frame::Object => object_frame(reading, dep),
    }
}

fn subject_frame(reading: &Reading, dep: &DepTree) -> Option<ExtrapositionCandidate> {
    let clause = reading.subordinate?;
    let (clause_form, comp_word, overt_relative) = classify_clause(dep, &clause)?;
    let copula = reading.matrix_is_copula(dep);
    let matrix_kind = if copula {
        // The main copula must be followed by an NP, ADJP, or PP predicate.
        let p = reading.matrix_object?;
        let pos = dep.pos(p);
        if !(NOMINAL_PREDICATE_POS.contains(&pos) || ADJECTIVE_POS.contains(&pos) || pos == "IN") {
            return None;
        }
        MatrixKind::CopulaWithPredicate
    } else {
        MatrixKind::GeneralVerb
    };
    let s_flag = !copula && clause_form == ClauseForm::Infinitive;
    Some(ExtrapositionCandidate {
        reading: reading.clone(),
        matrix_kind,
        predicate: reading.matrix_object,
        clause,
        clause_form,
        comp_word,
        overt_relative,
        s_flag,
    })
}

fn object_frame(reading: &Reading, dep: &DepTree) -> Option<ExtrapositionCandidate> {
    let clause = reading.subordinate?;
    // Object frames require a full clause led by `that`.
    let ClauseShape::Full {
        comp: Some(Comp::That(_)),
        ..
    } = clause.shape
    else {
        return None;
    };
    let matrix_kind = if reading.preposition.is_some() {
        MatrixKind::ObjectOfPreposition
    } else {
        MatrixKind::ObjectOfVerb
    };
    let _ = dep;
    Some(ExtrapositionCandidate {
        reading: reading.clone(),
        matrix_kind,
        predicate: None,
        clause,
        clause_form: ClauseForm::FullWithComplementizer,
        comp_word: Some("that".to_string()),
        overt_relative: false,
        s_flag: false,
    })
}

/// Table-form of the clause plus its (effective) complementizer. `None`
/// rejects clauses outside the recognized frame, e.g. who/which relatives.
fn classify_clause(dep: &DepTree, clause: &Clause) -> Option<(ClauseForm, Option<String>, bool)> {
    match clause.shape {
        ClauseShape::Infinitive { .. } => Some((ClauseForm::Infinitive, None, false)),
        ClauseShape::ForInfinitive { .. } => Some((ClauseForm::ForInfinitive, None, false)),
        ClauseShape::Gerund { .. } => Some((ClauseForm::Gerund, None, false)),
        ClauseShape::Full { comp, .. } => match comp {
            None => Some((ClauseForm::FullBare, None, false)),
            Some(Comp::That(i))
            | Some(Comp::Whether(i))
            | Some(Comp::If(i))
            | Some(Comp::WhAdverb(i)) => Some((
                ClauseForm::FullWithComplementizer,
                Some(dep.token_lower(i)),
                false,
            )),
            Some(Comp::Relative(i)) => {
                if dep.token_lower(i) == "that" {
                    Some((
                        ClauseForm::FullWithComplementizer,
                        Some("that".to_string()),
                        true,
                    ))
                } else {
                    None
                }
            }
        },
    }
}

/// The semantic screens of the filtering stage. The punctuation rule is
/// mandatory; the rest obey [`FilterFlags`].
pub fn apply_additional_filters(
    candidate: &ExtrapositionCandidate,
    dep: &DepTree,
    flags: &FilterFlags,
) -> Result<(), FilterReason> {
    let reading = &candidate.reading;
    if !punctuation_rule_ok(dep, reading.it_index, candidate.clause.first_token) {
        return Err(FilterReason::PunctuationRule);
    }
    if flags.perfect_tense && reading.perfect && !reading.matrix_is_copula(dep) {
        return Err(FilterReason::PerfectTense);
    }
    if flags.multiple_vps {
        if let Some(m) = reading.matrix_node() {
            if subject_of_multiple_vps(dep, m) {
                return Err(FilterReason::MultipleVerbPhrases);
            }
        }
    }
    if flags.np_predicate_rrc
        && candidate.matrix_kind == MatrixKind::CopulaWithPredicate
        && candidate.overt_relative
        && candidate
            .predicate
            .is_some_and(|p| dep.pos(p).starts_with("NN") || dep.pos(p) == "PRP")
    {
        return Err(FilterReason::NpPredicateWithRelative);
    }
    if flags.modal_with_if_or_wh && candidate.clause_form == ClauseForm::FullWithComplementizer {
        let modal_match = reading
            .modal
            .is_some_and(|m| matches!(dep.token_lower(m).as_str(), "could" | "would"));
        let comp_match = matches!(
            candidate.comp_word.as_deref(),
            Some("if") | Some("how") | Some("why") | Some("when") | Some("where")
        );
        if modal_match && comp_match {
            return Err(FilterReason::ModalWithIfOrWh);
        }
    }
    Ok(())
}
