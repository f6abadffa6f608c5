//! It-cleft recognition: `it + copula + clefted constituent + cleft clause`,
//! decided by an ordered list of grammatical cues on the constituent and the
//! subordinate clause. A construct counts as a cleft as soon as any cue
//! matches; the first hit is reported as the cue name (ordering affects only
//! diagnostics, not the verdict).

use super::{punctuation_rule_ok, FilterConfig};
use crate::querygen::morph;
use crate::treebank::{
    clause_shape, is_be_form, is_punct_pos, Clause, ClauseShape, Comp, DepTree, Reading,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CleftCue {
    /// Proper noun or pronoun, which cannot take a restrictive relative.
    ProperNounOrPronoun,
    /// Determinerless common noun, generally kind-referring.
    BareCommonNoun,
    /// Plural constituent disagreeing in number with a singular copula.
    PluralDisagreement,
    /// NP grounded by a demonstrative or possessive, or carrying its own
    /// relative modifier besides the cleft clause.
    GroundedOrModifiedNp,
    /// `the`-NP with an of-PP whose object is definite or plural.
    DefiniteNpWithOfPp,
    /// Locative/temporal adverb or a clause led by `when`.
    AdverbialConstituent,
    /// Full clause, gerund, or infinitive in constituent position.
    ClausalConstituent,
    /// Subordinate VP too sparse to be a natural relative clause
    /// (copula + bare adjective, or a lone verb).
    AwkwardRelative,
    /// Prepositional-phrase constituent followed by a full clause.
    PpWithFullClause,
    /// A wh-adverb immediately precedes `it` (virtual PP appended).
    WhAdverbPrecedesIt,
}

impl CleftCue {
    pub fn name(self) -> &'static str {
        match self {
            CleftCue::ProperNounOrPronoun => "proper-noun-or-pronoun",
            CleftCue::BareCommonNoun => "bare-common-noun",
            CleftCue::PluralDisagreement => "plural-disagreement",
            CleftCue::GroundedOrModifiedNp => "grounded-or-modified-np",
            CleftCue::DefiniteNpWithOfPp => "definite-np-with-of-pp",
            CleftCue::AdverbialConstituent => "adverbial-constituent",
            CleftCue::ClausalConstituent => "clausal-constituent",
            CleftCue::AwkwardRelative => "awkward-relative",
            CleftCue::PpWithFullClause => "pp-with-full-clause",
            CleftCue::WhAdverbPrecedesIt => "wh-adverb-precedes-it",
        }
    }
}

/// Where the cleft clause attaches relative to the constituent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Attachment {
    /// Inside the constituent NP, i.e. in restrictive-relative position.
    Inside,
    /// A sibling of the constituent under the copula.
    Outside,
}

/// Check a copula reading against the cleft cue list.
///
/// Preconditions (enforced by the caller): subject `it` and a real copula
/// matrix verb. Returns the first matching cue, or `None`.
pub fn filter_cleft(reading: &Reading, dep: &DepTree, cfg: &FilterConfig) -> Option<CleftCue> {
    let matrix = reading.matrix_node()?;
    let it = reading.it_index;

    let constituent = find_constituent(reading, dep);
    let Some(c) = constituent else {
        // No constituent at all: the wh-adverb case supplies a virtual PP.
        let clause = outside_clause(reading, dep, usize::MAX)?;
        if finite(&clause)
            && it > 0
            && dep.pos(it - 1) == "WRB"
            && matches!(
                clause.shape,
                ClauseShape::Full {
                    comp: Some(Comp::That(_)),
                    ..
                }
            )
            && punctuation_rule_ok(dep, it, clause.first_token)
        {
            return Some(CleftCue::WhAdverbPrecedesIt);
        }
        return None;
    };

    let (clause, attachment) = find_cleft_clause(reading, dep, c)?;
    if !finite(&clause) || !punctuation_rule_ok(dep, it, clause.first_token) {
        return None;
    }

    let pos = dep.pos(c);
    // Clause-shaped constituents (full clause, gerund, infinitive).
    if let Some(shape) = clause_shape(dep, c) {
        if let ClauseShape::Full {
            comp: Some(Comp::WhAdverb(w)),
            ..
        } = shape.shape
        {
            if dep.token_lower(w) == "when" {
                return Some(CleftCue::AdverbialConstituent);
            }
        }
        return Some(CleftCue::ClausalConstituent);
    }
    if pos.starts_with("RB") {
        return Some(CleftCue::AdverbialConstituent);
    }
    if pos == "IN" {
        // Adjective/adverb constituents are excluded from the analysis, and
        // PP constituents are clefts only with a following full clause.
        if attachment == Attachment::Outside
            && matches!(
                clause.shape,
                ClauseShape::Full {
                    comp: Some(Comp::That(_)),
                    ..
                } | ClauseShape::Full { comp: None, .. }
            )
        {
            return Some(CleftCue::PpWithFullClause);
        }
        return None;
    }
    if matches!(pos, "JJ" | "JJR" | "JJS") {
        return None;
    }

    // Nominal constituents: cues in their numbered order.
    if matches!(pos, "NNP" | "NNPS" | "PRP") {
        return Some(CleftCue::ProperNounOrPronoun);
    }
    let dets: Vec<usize> = dep
        .dependents(c)
        .iter()
        .copied()
        .filter(|&d| matches!(dep.pos(d), "DT" | "PRP$" | "POS" | "WP$"))
        .collect();
    if matches!(pos, "NN" | "NNS") && dets.is_empty() && !has_possessive_np(dep, c) {
        return Some(CleftCue::BareCommonNoun);
    }
    if matches!(pos, "NNS" | "NNPS") && singular_copula(dep.token(matrix)) {
        return Some(CleftCue::PluralDisagreement);
    }
    let grounded = dets.iter().any(|&d| {
        matches!(dep.pos(d), "PRP$" | "POS" | "WP$")
            || matches!(
                dep.token_lower(d).as_str(),
                "this" | "that" | "these" | "those"
            )
    });
    let extra_rrc = {
        let inside_count = internal_finite_clauses(dep, c).len();
        match attachment {
            Attachment::Inside => inside_count >= 2,
            Attachment::Outside => inside_count >= 1,
        }
    };
    if grounded || extra_rrc {
        return Some(CleftCue::GroundedOrModifiedNp);
    }
    if definite_with_of_pp(dep, c, cfg) {
        return Some(CleftCue::DefiniteNpWithOfPp);
    }
    if let Some(tok) = adverbial_noun(dep, c) {
        let _ = tok;
        return Some(CleftCue::AdverbialConstituent);
    }
    if attachment == Attachment::Inside {
        if let Some(cue) = awkward_relative(dep, &clause) {
            return Some(cue);
        }
    }
    None
}

/// The clefted constituent: the first post-copula dependent that is not
/// generic adverbial material or a negation/degree word. A clause-shaped
/// dependent can fill the slot only when another finite clause follows it;
/// a lone clause is the subordinate clause, not a constituent.
fn find_constituent(reading: &Reading, dep: &DepTree) -> Option<usize> {
    reading
        .post_deps
        .iter()
        .copied()
        .find(|&d| {
            let pos = dep.pos(d);
            if is_punct_pos(pos) || pos == "RP" || pos == "CC" {
                return false;
            }
            if pos.starts_with("RB") {
                return crate::treebank::is_locative_time_adverb(dep.token(d));
            }
            if clause_shape(dep, d).is_some() {
                return reading.post_deps.iter().any(|&later| {
                    later > d && clause_shape(dep, later).is_some_and(|c| finite(&c))
                });
            }
            true
        })
        .or(reading.matrix_object.filter(|_| reading.inverted))
}

fn outside_clause(reading: &Reading, dep: &DepTree, constituent: usize) -> Option<Clause> {
    reading
        .post_deps
        .iter()
        .copied()
        .filter(|&d| d != constituent && (constituent == usize::MAX || d > constituent))
        .find_map(|d| clause_shape(dep, d))
}

/// Locate the cleft clause: first a finite clause inside the constituent
/// (the restrictive-relative position), then a sibling clause.
fn find_cleft_clause(
    reading: &Reading,
    dep: &DepTree,
    constituent: usize,
) -> Option<(Clause, Attachment)> {
    if clause_shape(dep, constituent).is_none() {
        if let Some(cl) = internal_finite_clauses(dep, constituent).into_iter().next() {
            return Some((cl, Attachment::Inside));
        }
    }
    outside_clause(reading, dep, constituent)
        .filter(finite)
        .map(|cl| (cl, Attachment::Outside))
}

fn internal_finite_clauses(dep: &DepTree, c: usize) -> Vec<Clause> {
    dep.dependents(c)
        .iter()
        .copied()
        .filter(|&d| d > c)
        .filter_map(|d| clause_shape(dep, d))
        .filter(finite)
        .collect()
}

fn finite(clause: &Clause) -> bool {
    matches!(clause.shape, ClauseShape::Full { .. })
}

fn singular_copula(token: &str) -> bool {
    matches!(token.to_lowercase().as_str(), "is" | "was" | "'s")
}

fn has_possessive_np(dep: &DepTree, c: usize) -> bool {
    dep.dependents(c).iter().any(|&d| {
        d < c
            && dep.pos(d).starts_with("NN")
            && dep.dependents(d).iter().any(|&g| dep.pos(g) == "POS")
    })
}

fn definite_with_of_pp(dep: &DepTree, c: usize, cfg: &FilterConfig) -> bool {
    let has_the = dep
        .dependents(c)
        .iter()
        .any(|&d| dep.pos(d) == "DT" && dep.token_lower(d) == "the");
    if !has_the {
        return false;
    }
    let lemma = morph::singular_noun(&dep.token_lower(c));
    if cfg.of_pp_exceptions.iter().any(|e| e == &lemma) {
        return false;
    }
    dep.dependents(c)
        .iter()
        .copied()
        .filter(|&d| d > c && dep.pos(d) == "IN" && dep.token_lower(d) == "of")
        .any(|of| {
            dep.dependents(of).iter().copied().any(|o| {
                let pos = dep.pos(o);
                if !pos.starts_with("NN") {
                    return false;
                }
                pos == "NNS"
                    || pos == "NNPS"
                    || dep
                        .dependents(o)
                        .iter()
                        .any(|&g| dep.pos(g) == "DT" && dep.token_lower(g) == "the")
            })
        })
}

/// Nouns like "today"/"yesterday" in constituent position.
fn adverbial_noun(dep: &DepTree, c: usize) -> Option<String> {
    let tok = dep.token_lower(c);
    if matches!(tok.as_str(), "today" | "yesterday" | "tomorrow") {
        Some(tok)
    } else {
        None
    }
}

/// Cue on the subordinate clause itself: shapes that read awkwardly as a
/// restrictive relative (copula + lone adjective, or a bare verb).
fn awkward_relative(dep: &DepTree, clause: &Clause) -> Option<CleftCue> {
    let ClauseShape::Full { finite, .. } = clause.shape else {
        return None;
    };
    // Resolve through auxiliaries to the content verb.
    let mut v = finite;
    while let Some(next) = crate::treebank::aux_complement(dep, v) {
        v = next;
    }
    let post: Vec<usize> = dep
        .dependents(v)
        .iter()
        .copied()
        .filter(|&d| d > v && !is_punct_pos(dep.pos(d)))
        .collect();
    if is_be_form(dep.token(v)) {
        if post.len() == 1 && matches!(dep.pos(post[0]), "JJ" | "JJR" | "JJS") {
            return Some(CleftCue::AwkwardRelative);
        }
        return None;
    }
    if post.is_empty() {
        return Some(CleftCue::AwkwardRelative);
    }
    None
}
