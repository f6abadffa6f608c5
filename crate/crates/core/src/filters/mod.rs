//! Syntactic filtering: decides, on syntax alone, whether a reading is a
//! cleft, a weather/time case, an extraposition candidate (to be sent to
//! queries), or none of these.
//!
//! Per reading the pipeline checks weather/time first, then cleft, then
//! extraposition candidacy, so each reading yields at most one verdict kind.

mod cleft;
mod extraposition;

pub use cleft::{filter_cleft, CleftCue};
pub use extraposition::{
    apply_additional_filters, filter_extraposition, ClauseForm, ExtrapositionCandidate,
    FilterReason, MatrixKind,
};

use crate::querygen::morph;
use crate::treebank::{is_be_form, DepTree, Frame, MatrixVerb, Reading};
use once_cell::sync::Lazy;
use std::collections::HashSet;

const WEATHER_VERBS: &str = include_str!("../../data/weather_verbs.txt");
const WEATHER_HEADS: &str = include_str!("../../data/weather_heads.txt");
const TIME_HEADS: &str = include_str!("../../data/time_heads.txt");

/// Lemma sets for the weather/time recognizer, bundled as editable data
/// files (one lemma per line, `#` comments).
#[derive(Debug, Clone)]
pub struct WeatherTimeLexicon {
    pub weather_heads: HashSet<String>,
    pub time_heads: HashSet<String>,
    pub weather_verbs: HashSet<String>,
}

fn parse_lexicon(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

static DEFAULT_LEXICON: Lazy<WeatherTimeLexicon> = Lazy::new(|| WeatherTimeLexicon {
    weather_heads: parse_lexicon(WEATHER_HEADS),
    time_heads: parse_lexicon(TIME_HEADS),
    weather_verbs: parse_lexicon(WEATHER_VERBS),
});

impl Default for WeatherTimeLexicon {
    fn default() -> Self {
        DEFAULT_LEXICON.clone()
    }
}

impl WeatherTimeLexicon {
    pub fn from_texts(weather_heads: &str, time_heads: &str, weather_verbs: &str) -> Self {
        WeatherTimeLexicon {
            weather_heads: parse_lexicon(weather_heads),
            time_heads: parse_lexicon(time_heads),
            weather_verbs: parse_lexicon(weather_verbs),
        }
    }
}

/// The optional filters. The punctuation rule is mandatory and
/// not represented here; everything else can be deactivated in case it
/// introduces false negatives. Defaults are all on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterFlags {
    /// Reject non-copula matrix verbs in perfect tense.
    pub perfect_tense: bool,
    /// Reject when `it` is the subject of multiple verb phrases.
    pub multiple_vps: bool,
    /// Reject NP matrix predicates modified by an overt relative clause.
    pub np_predicate_rrc: bool,
    /// Reject modal could/would plus a subordinate if/wh clause.
    pub modal_with_if_or_wh: bool,
}

impl Default for FilterFlags {
    fn default() -> Self {
        FilterFlags {
            perfect_tense: true,
            multiple_vps: true,
            np_predicate_rrc: true,
            modal_with_if_or_wh: true,
        }
    }
}

impl FilterFlags {
    pub fn none() -> Self {
        FilterFlags {
            perfect_tense: false,
            multiple_vps: false,
            np_predicate_rrc: false,
            modal_with_if_or_wh: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FilterConfig {
    pub flags: FilterFlags,
    pub lexicon: WeatherTimeLexicon,
    /// Head lemmas exempt from the definite-NP-with-of-PP cleft cue.
    pub of_pp_exceptions: Vec<String>,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            flags: FilterFlags::default(),
            lexicon: WeatherTimeLexicon::default(),
            of_pp_exceptions: ["kind", "sort", "type", "variety"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

/// Outcome of syntactic filtering for one reading.
#[derive(Debug, Clone, PartialEq)]
pub enum SyntacticVerdict {
    WeatherTime,
    Cleft(CleftCue),
    ExtrapositionCandidate(Box<ExtrapositionCandidate>),
    None(FilterReason),
}

/// Weather/time test: a weather verb as matrix verb, or a copula whose
/// predicate head lemma is in the weather or time lemma sets.
pub fn detect_weather_time(reading: &Reading, dep: &DepTree, lex: &WeatherTimeLexicon) -> bool {
    if reading.frame != Frame::SubjectLike {
        return false;
    }
    match reading.matrix {
        MatrixVerb::VirtualCopula { .. } => false,
        MatrixVerb::Node(v) => {
            if is_be_form(dep.token(v)) {
                let Some(p) = reading.matrix_object else {
                    return false;
                };
                let head = dep.token_lower(p);
                let lemma = if dep.pos(p).starts_with("NN") {
                    morph::singular_noun(&head)
                } else {
                    head
                };
                lex.weather_heads.contains(&lemma) || lex.time_heads.contains(&lemma)
            } else {
                lex.weather_verbs.contains(&morph::verb_lemma(dep.token(v)))
            }
        }
    }
}

/// Tokens the punctuation rule counts between `it` and the clause.
pub(crate) fn is_counted_punct(token: &str) -> bool {
    matches!(token, "," | "-" | "--" | ":" | ";")
}

/// Number of commas/dashes/colons strictly between two token positions.
pub(crate) fn punct_between(dep: &DepTree, a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    (lo + 1..hi)
        .filter(|&i| is_counted_punct(dep.token(i)))
        .count()
}

/// The punctuation count must be zero or more than one for the clause to be
/// treated as subordinate at all.
pub(crate) fn punctuation_rule_ok(dep: &DepTree, it: usize, clause_start: usize) -> bool {
    punct_between(dep, it, clause_start) != 1
}

/// Is `it` the subject of multiple (shared-subject, coordinated) verb
/// phrases? Detected as a conjunction plus a subjectless finite verb hanging
/// off the matrix verb.
pub(crate) fn subject_of_multiple_vps(dep: &DepTree, matrix: usize) -> bool {
    let deps = dep.dependents(matrix);
    let has_cc_at = |upto: usize| {
        deps.iter()
            .any(|&c| c > matrix && c < upto && dep.pos(c) == "CC")
    };
    deps.iter().any(|&w| {
        w > matrix
            && crate::treebank::is_finite_pos(dep.pos(w))
            && has_cc_at(w)
            && !dep
                .dependents(w)
                .iter()
                .any(|&s| s < w && matches!(dep.pos(s), "NN" | "NNS" | "NNP" | "NNPS" | "PRP"))
    })
}

/// Run the full per-reading filter pipeline.
pub fn evaluate_reading(reading: &Reading, dep: &DepTree, cfg: &FilterConfig) -> SyntacticVerdict {
    if detect_weather_time(reading, dep, &cfg.lexicon) {
        return SyntacticVerdict::WeatherTime;
    }
    if reading.frame == Frame::SubjectLike && reading.matrix_is_copula(dep) {
        let blocked = cfg.flags.multiple_vps
            && reading
                .matrix_node()
                .is_some_and(|m| subject_of_multiple_vps(dep, m));
        if !blocked {
            if let Some(cue) = filter_cleft(reading, dep, cfg) {
                return SyntacticVerdict::Cleft(cue);
            }
        }
    }
    match filter_extraposition(reading, dep) {
        Some(candidate) => match apply_additional_filters(&candidate, dep, &cfg.flags) {
            Ok(()) => SyntacticVerdict::ExtrapositionCandidate(Box::new(candidate)),
            Err(reason) => SyntacticVerdict::None(reason),
        },
        None => SyntacticVerdict::None(FilterReason::NotViable),
    }
}
