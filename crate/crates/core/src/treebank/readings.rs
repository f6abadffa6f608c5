//! Enumeration of `it` instances and their candidate matrix-verb readings.
//!
//! A reading is one (matrix verb, logical object, subordinate clause)
//! decomposition of the sentence around an `it` token. Subject instances can
//! yield several readings: starting at the verb governing `it`, the chain of
//! directly attached verbs and infinitives is drilled downward, one reading
//! per content verb, stopping once a verb carries anything other than verbal
//! or adverbial material after it. Object instances followed by an object
//! complement get a single reading with a virtual copula (tagged `VBX`)
//! spliced between `it` and the complement, which makes them match the
//! subject-extraposition frame downstream.

use super::deptree::DepTree;
use super::is_punct_pos;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrammaticalRole {
    Subject,
    VerbObject,
    PrepositionObject,
}

/// One occurrence of the pronoun `it` (case-insensitive, POS `PRP`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItInstance {
    pub sentence_id: String,
    pub token_index: usize,
    pub role: GrammaticalRole,
}

pub fn is_verb_pos(pos: &str) -> bool {
    matches!(
        pos,
        "VB" | "VBD" | "VBG" | "VBN" | "VBP" | "VBZ" | "MD" | "VBX"
    )
}

pub fn is_finite_pos(pos: &str) -> bool {
    matches!(pos, "VBD" | "VBP" | "VBZ" | "MD")
}

fn is_adverb_pos(pos: &str) -> bool {
    matches!(pos, "RB" | "RBR" | "RBS" | "ADVP")
}

const BE_FORMS: &[&str] = &[
    "be", "is", "are", "was", "were", "been", "being", "am", "'s", "'re", "'m", "ai",
];
const DO_FORMS: &[&str] = &["do", "does", "did"];
const HAVE_FORMS: &[&str] = &["have", "has", "had", "'ve", "'d"];
const WH_ADVERBS: &[&str] = &["how", "why", "when", "where"];

pub fn is_be_form(token: &str) -> bool {
    BE_FORMS.contains(&token.to_lowercase().as_str())
}

/// Every `it` token in the tree, with a grammatical role read off the edge
/// to its head: a pre-verbal dependent of a verb is a subject, a post-verbal
/// one an object, and a dependent of a preposition a preposition object.
pub fn find_it_instances(dep: &DepTree, sentence_id: &str) -> Vec<ItInstance> {
    let mut out = Vec::new();
    for i in 0..dep.len() {
        let n = dep.node(i);
        if n.pos != "PRP" || !n.token.eq_ignore_ascii_case("it") {
            continue;
        }
        let role = match dep.head_of(i) {
            Some(h) if is_verb_pos(dep.pos(h)) => {
                if i < h {
                    GrammaticalRole::Subject
                } else {
                    GrammaticalRole::VerbObject
                }
            }
            Some(h) if dep.pos(h) == "IN" || dep.pos(h) == "TO" => {
                GrammaticalRole::PrepositionObject
            }
            Some(h) => {
                // e.g. the small-clause shape "make [it difficult]", where the
                // predicate governs `it`.
                let governing_verb = dep
                    .ancestors(h)
                    .find(|&a| is_verb_pos(dep.pos(a)))
                    .filter(|&v| v < i);
                if governing_verb.is_some() {
                    GrammaticalRole::VerbObject
                } else {
                    GrammaticalRole::Subject
                }
            }
            None => GrammaticalRole::Subject,
        };
        out.push(ItInstance {
            sentence_id: sentence_id.to_string(),
            token_index: i,
            role,
        });
    }
    out
}

/// The matrix verb of a reading: a real tree node, or the virtual copula
/// inserted for object-complement constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixVerb {
    Node(usize),
    /// Virtual `to be` (POS `VBX`) between object `it` and its complement.
    VirtualCopula {
        host_verb: usize,
    },
}

/// Which extraposition frame the reading is analysed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// `it` is (treated as) the subject of the matrix verb.
    SubjectLike,
    /// Object `it` with object complement, via the virtual copula.
    ObjectComplement,
    /// Object `it` (of a verb or preposition) followed by a full clause.
    Object,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comp {
    That(usize),
    Whether(usize),
    If(usize),
    WhAdverb(usize),
    /// Overt relativizer (`that`/`which`/`who` tagged WDT/WP).
    Relative(usize),
}

impl Comp {
    pub fn token_index(self) -> usize {
        match self {
            Comp::That(i)
            | Comp::Whether(i)
            | Comp::If(i)
            | Comp::WhAdverb(i)
            | Comp::Relative(i) => i,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseShape {
    Infinitive {
        to: usize,
        verb: usize,
    },
    ForInfinitive {
        marker: usize,
        to: usize,
        verb: usize,
        subject: Option<usize>,
    },
    Gerund {
        verb: usize,
    },
    Full {
        comp: Option<Comp>,
        finite: usize,
    },
}

/// A subordinate-clause candidate: its head node, its shape, and the
/// leftmost token it covers (needed for the punctuation filter).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    pub head: usize,
    pub first_token: usize,
    pub shape: ClauseShape,
}

impl Clause {
    pub fn comp(&self) -> Option<Comp> {
        match self.shape {
            ClauseShape::Full { comp, .. } => comp,
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reading {
    pub it_index: usize,
    pub role: GrammaticalRole,
    pub frame: Frame,
    pub matrix: MatrixVerb,
    /// The logical predicate (copula readings) or direct object (others).
    pub matrix_object: Option<usize>,
    pub subordinate: Option<Clause>,
    pub virtual_copula: bool,
    /// Matrix verb belongs to a parenthetical (`..., it seems, ...`) whose
    /// host clause serves as the extraposed material.
    pub parenthetical: bool,
    /// Preposition between verb and `it` for preposition-object readings.
    pub preposition: Option<usize>,
    /// `could`/`would`-style auxiliary skipped on the way down the chain.
    pub modal: Option<usize>,
    /// Matrix verb is a participle under a `have` auxiliary.
    pub perfect: bool,
    /// `not`/`too` modifiers adjacent to the predicate, retained by query
    /// truncation.
    pub negation_or_too: Vec<usize>,
    /// Non-punctuation dependents following the matrix verb (cue checks).
    pub post_deps: Vec<usize>,
    /// Predicate was found left of the copula (questions/inversion).
    pub inverted: bool,
}

impl Reading {
    pub fn matrix_node(&self) -> Option<usize> {
        match self.matrix {
            MatrixVerb::Node(i) => Some(i),
            MatrixVerb::VirtualCopula { .. } => None,
        }
    }

    /// True when the matrix verb is the main copula `to be` (the virtual
    /// copula counts).
    pub fn matrix_is_copula(&self, dep: &DepTree) -> bool {
        match self.matrix {
            MatrixVerb::VirtualCopula { .. } => true,
            MatrixVerb::Node(i) => is_be_form(dep.token(i)),
        }
    }

    pub fn matrix_surface<'a>(&self, dep: &'a DepTree) -> &'a str {
        match self.matrix {
            MatrixVerb::Node(i) => dep.token(i),
            MatrixVerb::VirtualCopula { .. } => "be",
        }
    }

    pub fn matrix_index(&self, dep: &DepTree) -> usize {
        match self.matrix {
            MatrixVerb::Node(i) => i,
            // The virtual copula sits between `it` and the complement; use
            // the complement-side position for ordering purposes.
            MatrixVerb::VirtualCopula { .. } => self.matrix_object.unwrap_or_else(|| dep.root()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReadingError {
    /// The instance's head chain contains no verb: a parse defect. The
    /// instance is classified referential downstream.
    #[error("no governing verb for `it` at token {0}")]
    NoGoverningVerb(usize),
}

struct ChainCtx {
    modal: Option<usize>,
    have_aux: bool,
}

/// Candidate readings for one `it` instance.
pub fn generate_readings(inst: &ItInstance, dep: &DepTree) -> Result<Vec<Reading>, ReadingError> {
    let it = inst.token_index;
    let head = dep.head_of(it).ok_or(ReadingError::NoGoverningVerb(it))?;

    match inst.role {
        GrammaticalRole::Subject => {
            let start = if is_verb_pos(dep.pos(head)) {
                head
            } else {
                dep.ancestors(head)
                    .find(|&a| is_verb_pos(dep.pos(a)))
                    .ok_or(ReadingError::NoGoverningVerb(it))?
            };
            let mut out = Vec::new();
            drill(
                dep,
                it,
                start,
                ChainCtx {
                    modal: None,
                    have_aux: false,
                },
                &mut out,
            );
            if out.is_empty() {
                return Err(ReadingError::NoGoverningVerb(it));
            }
            Ok(out)
        }
        GrammaticalRole::VerbObject => {
            if is_verb_pos(dep.pos(head)) {
                // Direct questions invert subject and copula; re-analyse
                // clause-initial copulas as a subject frame.
                if is_be_form(dep.token(head)) && clause_initial(dep, head) {
                    let mut out = Vec::new();
                    drill(
                        dep,
                        it,
                        head,
                        ChainCtx {
                            modal: None,
                            have_aux: false,
                        },
                        &mut out,
                    );
                    if !out.is_empty() {
                        return Ok(out);
                    }
                }
                if let Some(pred) = object_complement(dep, head, it) {
                    return Ok(vec![virtual_copula_reading(dep, inst, head, pred)]);
                }
                Ok(vec![object_reading(dep, inst, head, None)])
            } else {
                // Small clause: the complement governs `it`.
                let verb = dep
                    .ancestors(head)
                    .find(|&a| is_verb_pos(dep.pos(a)))
                    .ok_or(ReadingError::NoGoverningVerb(it))?;
                Ok(vec![virtual_copula_reading(dep, inst, verb, head)])
            }
        }
        GrammaticalRole::PrepositionObject => {
            let prep = head;
            match dep.head_of(prep).filter(|&v| is_verb_pos(dep.pos(v))) {
                Some(verb) => Ok(vec![object_reading(dep, inst, verb, Some(prep))]),
                None => {
                    // Preposition hangs off a noun ("secret of it"): report
                    // the nearest verbal ancestor; no clause will attach.
                    let verb = dep
                        .ancestors(prep)
                        .find(|&a| is_verb_pos(dep.pos(a)))
                        .ok_or(ReadingError::NoGoverningVerb(it))?;
                    Ok(vec![object_reading(dep, inst, verb, Some(prep))])
                }
            }
        }
    }
}

/// True when `v` opens its clause, ignoring punctuation and wh-words.
fn clause_initial(dep: &DepTree, v: usize) -> bool {
    (0..v).all(|i| {
        let pos = dep.pos(i);
        is_punct_pos(pos) || pos.starts_with('W') || pos == "CC"
    })
}

/// Recursive chain walk from `v`; auxiliaries are transparent and content
/// verbs each emit one reading.
fn drill(dep: &DepTree, it: usize, v: usize, ctx: ChainCtx, out: &mut Vec<Reading>) {
    if let Some(next) = aux_complement(dep, v) {
        let token = dep.token_lower(v);
        let ctx = ChainCtx {
            modal: if dep.pos(v) == "MD" {
                Some(v)
            } else {
                ctx.modal
            },
            have_aux: ctx.have_aux || HAVE_FORMS.contains(&token.as_str()),
        };
        drill(dep, it, next, ctx, out);
        return;
    }
    let reading = subject_reading(dep, it, v, &ctx);
    let descend = reading.post_deps.iter().all(|&d| {
        is_verb_pos(dep.pos(d))
            || is_adverb_pos(dep.pos(d))
            || dep.pos(d) == "RP"
            || dep.pos(d) == "TO"
    });
    let verbal_deps: Vec<usize> = reading
        .post_deps
        .iter()
        .copied()
        .filter(|&d| is_verb_pos(dep.pos(d)) || dep.pos(d) == "TO")
        .collect();
    out.push(reading);
    if descend {
        for d in verbal_deps {
            drill(
                dep,
                it,
                d,
                ChainCtx {
                    modal: ctx.modal,
                    have_aux: ctx.have_aux,
                },
                out,
            );
        }
    }
}

/// If `v` is a transparent auxiliary (modal, infinitive marker, do-support,
/// perfect `have`, progressive/passive `be`), return the verb it wraps.
pub fn aux_complement(dep: &DepTree, v: usize) -> Option<usize> {
    let next_verb = dep
        .dependents(v)
        .iter()
        .copied()
        .find(|&d| d > v && (is_verb_pos(dep.pos(d)) || dep.pos(d) == "TO"));
    let pos = dep.pos(v);
    if pos == "MD" || pos == "TO" {
        return next_verb;
    }
    let token = dep.token_lower(v);
    let next = next_verb?;
    if DO_FORMS.contains(&token.as_str()) && matches!(dep.pos(next), "VB" | "TO") {
        return Some(next);
    }
    if HAVE_FORMS.contains(&token.as_str()) && dep.pos(next) == "VBN" {
        return Some(next);
    }
    if BE_FORMS.contains(&token.as_str()) && matches!(dep.pos(next), "VBG" | "VBN") {
        return Some(next);
    }
    None
}

fn post_dependents(dep: &DepTree, v: usize) -> Vec<usize> {
    dep.dependents(v)
        .iter()
        .copied()
        .filter(|&d| d > v && !is_punct_pos(dep.pos(d)))
        .collect()
}

/// POS that can head an Eq.-style logical predicate. Prepositions and
/// locative adverbs are included so that cleft cues can inspect PP and
/// adverbial constituents; frame validation happens in the filters.
fn is_predicate_pos(pos: &str) -> bool {
    matches!(
        pos,
        "NN" | "NNS" | "NNP" | "NNPS" | "PRP" | "CD" | "EX" | "DT" | "JJ" | "JJR" | "JJS" | "$"
    )
}

const LOCATIVE_TIME_ADVERBS: &[&str] = &[
    "here",
    "there",
    "today",
    "yesterday",
    "tomorrow",
    "now",
    "then",
];

/// Adverbs that can stand as a clefted constituent (location/specific time),
/// as opposed to generic adverbial modifiers which filters skip over.
pub fn is_locative_time_adverb(token: &str) -> bool {
    LOCATIVE_TIME_ADVERBS.contains(&token.to_lowercase().as_str())
}

fn subject_reading(dep: &DepTree, it: usize, v: usize, ctx: &ChainCtx) -> Reading {
    let copula = is_be_form(dep.token(v));
    // In inverted questions `it` follows the copula; it is never predicate
    // or clause material itself.
    let post: Vec<usize> = post_dependents(dep, v)
        .into_iter()
        .filter(|&d| d != it)
        .collect();
    let mut predicate: Option<usize>;
    let mut inverted = false;
    if copula {
        predicate = post
            .iter()
            .copied()
            .find(|&d| clause_shape(dep, d).is_none() && predicate_like(dep, d));
        if predicate.is_none() {
            // Inverted/question variants: "how hard it was ...", "the easier
            // it is ..." put the predicate left of the copula, either as a
            // fronted dependent or as the copula's own governor.
            let fronted = dep
                .dependents(v)
                .iter()
                .copied()
                .filter(|&d| d < it)
                .rfind(|&d| matches!(dep.pos(d), "JJ" | "JJR" | "JJS"));
            let governor = dep
                .head_of(v)
                .filter(|&g| matches!(dep.pos(g), "JJ" | "JJR" | "JJS" | "NN" | "NNS") && g < it);
            predicate = fronted.or(governor);
            inverted = predicate.is_some();
        }
    } else {
        predicate = post
            .iter()
            .copied()
            .find(|&d| clause_shape(dep, d).is_none() && noun_like(dep, d));
    }

    let mut subordinate = post
        .iter()
        .copied()
        .filter(|&d| Some(d) != predicate)
        .find_map(|d| clause_shape(dep, d));
    if subordinate.is_none() {
        if let Some(p) = predicate {
            subordinate = dep
                .dependents(p)
                .iter()
                .copied()
                .filter(|&d| d > p)
                .find_map(|d| clause_shape(dep, d));
        }
    }

    let mut parenthetical = false;
    if subordinate.is_none() && predicate.is_none() && !copula {
        // Parenthetical "Americans it seems have followed ...": the matrix
        // verb interrupts a host clause whose subject precedes `it` and
        // whose own verb follows; the host clause is the candidate.
        if let Some(host) = dep.head_of(v).filter(|&h| {
            is_verb_pos(dep.pos(h))
                && h > v
                && dep
                    .dependents(h)
                    .iter()
                    .any(|&s| s < it && !is_punct_pos(dep.pos(s)))
        }) {
            subordinate = Some(Clause {
                head: host,
                first_token: host_clause_start(dep, host, v),
                shape: ClauseShape::Full {
                    comp: None,
                    finite: host,
                },
            });
            parenthetical = true;
        }
    }

    let negation_or_too = collect_not_too(dep, v, predicate);
    Reading {
        it_index: it,
        role: GrammaticalRole::Subject,
        frame: Frame::SubjectLike,
        matrix: MatrixVerb::Node(v),
        matrix_object: predicate,
        subordinate,
        virtual_copula: false,
        parenthetical,
        preposition: None,
        modal: ctx.modal,
        perfect: ctx.have_aux && dep.pos(v) == "VBN",
        negation_or_too,
        post_deps: post,
        inverted,
    }
}

/// First token of the host clause, leaving out the parenthetical itself.
fn host_clause_start(dep: &DepTree, host: usize, paren_verb: usize) -> usize {
    let paren = dep.subtree(paren_verb);
    dep.subtree(host)
        .into_iter()
        .find(|i| !paren.contains(i))
        .unwrap_or(host)
}

fn predicate_like(dep: &DepTree, d: usize) -> bool {
    let pos = dep.pos(d);
    if is_predicate_pos(pos) {
        return true;
    }
    if pos == "IN" {
        // An ordinary PP can serve as the logical predicate; clause-shaped
        // IN heads were already excluded by the caller.
        return true;
    }
    if pos.starts_with("RB") {
        return LOCATIVE_TIME_ADVERBS.contains(&dep.token_lower(d).as_str());
    }
    false
}

fn noun_like(dep: &DepTree, d: usize) -> bool {
    matches!(
        dep.pos(d),
        "NN" | "NNS" | "NNP" | "NNPS" | "PRP" | "CD" | "JJ" | "$"
    )
}

fn collect_not_too(dep: &DepTree, v: usize, predicate: Option<usize>) -> Vec<usize> {
    let mut out = Vec::new();
    let limit = predicate.unwrap_or(usize::MAX);
    let mut sources: Vec<usize> = dep.dependents(v).to_vec();
    if let Some(p) = predicate {
        sources.extend_from_slice(dep.dependents(p));
    }
    for d in sources {
        if d <= limit && d > v {
            let tok = dep.token_lower(d);
            if tok == "not" || tok == "n't" || tok == "too" {
                out.push(d);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn object_complement(dep: &DepTree, verb: usize, it: usize) -> Option<usize> {
    post_dependents(dep, verb)
        .into_iter()
        .filter(|&d| d > it)
        .find(|&d| {
            clause_shape(dep, d).is_none()
                && matches!(dep.pos(d), "JJ" | "JJR" | "JJS" | "NN" | "NNS")
        })
}

fn virtual_copula_reading(dep: &DepTree, inst: &ItInstance, verb: usize, pred: usize) -> Reading {
    // The complement's own right-side dependents come first; material the
    // host verb carries after the complement is also in scope (flat parses).
    let mut post: Vec<usize> = dep
        .dependents(pred)
        .iter()
        .copied()
        .filter(|&d| d > pred && !is_punct_pos(dep.pos(d)))
        .collect();
    post.extend(post_dependents(dep, verb).into_iter().filter(|&d| d > pred));
    post.sort_unstable();
    post.dedup();
    let subordinate = post.iter().copied().find_map(|d| clause_shape(dep, d));
    Reading {
        it_index: inst.token_index,
        role: inst.role,
        frame: Frame::ObjectComplement,
        matrix: MatrixVerb::VirtualCopula { host_verb: verb },
        matrix_object: Some(pred),
        subordinate,
        virtual_copula: true,
        parenthetical: false,
        preposition: None,
        modal: None,
        perfect: false,
        negation_or_too: collect_not_too(dep, inst.token_index, Some(pred)),
        post_deps: post,
        inverted: false,
    }
}

fn object_reading(
    dep: &DepTree,
    inst: &ItInstance,
    verb: usize,
    preposition: Option<usize>,
) -> Reading {
    let post = post_dependents(dep, verb);
    let subordinate = post
        .iter()
        .copied()
        .filter(|&d| d > inst.token_index)
        .find_map(|d| match clause_shape(dep, d) {
            // Eq.-2 frames require a full clause.
            Some(c) if matches!(c.shape, ClauseShape::Full { .. }) => Some(c),
            _ => None,
        });
    Reading {
        it_index: inst.token_index,
        role: inst.role,
        frame: Frame::Object,
        matrix: MatrixVerb::Node(verb),
        matrix_object: None,
        subordinate,
        virtual_copula: false,
        parenthetical: false,
        preposition,
        modal: None,
        perfect: false,
        negation_or_too: Vec::new(),
        post_deps: post,
        inverted: false,
    }
}

/// Classify a dependency node as the head of a subordinate-clause candidate.
pub fn clause_shape(dep: &DepTree, d: usize) -> Option<Clause> {
    let pos = dep.pos(d);
    let first_token = dep.subtree_start(d);
    let clause = |shape| {
        Some(Clause {
            head: d,
            first_token,
            shape,
        })
    };
    match pos {
        "TO" => {
            // A bare `to` with no verb under it is a preposition, not an
            // infinitive marker.
            let verb = dep
                .dependents(d)
                .iter()
                .copied()
                .find(|&c| c > d && is_verb_pos(dep.pos(c)))?;
            clause(ClauseShape::Infinitive { to: d, verb })
        }
        "VBG" => clause(ClauseShape::Gerund { verb: d }),
        "IN" => {
            let token = dep.token_lower(d);
            if token == "for" {
                let to = dep
                    .dependents(d)
                    .iter()
                    .copied()
                    .find(|&c| dep.pos(c) == "TO")?;
                let verb = dep
                    .dependents(to)
                    .iter()
                    .copied()
                    .find(|&c| c > to && is_verb_pos(dep.pos(c)))?;
                let subject = dep
                    .dependents(to)
                    .iter()
                    .copied()
                    .find(|&c| c < to && noun_like(dep, c));
                return clause(ClauseShape::ForInfinitive {
                    marker: d,
                    to,
                    verb,
                    subject,
                });
            }
            let finite = finite_dependent(dep, d)?;
            let comp = match token.as_str() {
                "that" => Comp::That(d),
                "whether" => Comp::Whether(d),
                "if" => Comp::If(d),
                _ => return None,
            };
            clause(ClauseShape::Full {
                comp: Some(comp),
                finite,
            })
        }
        "WRB" => {
            if !WH_ADVERBS.contains(&dep.token_lower(d).as_str()) {
                return None;
            }
            let finite = finite_dependent(dep, d)?;
            clause(ClauseShape::Full {
                comp: Some(Comp::WhAdverb(d)),
                finite,
            })
        }
        "WDT" | "WP" => {
            let finite = finite_dependent(dep, d)?;
            clause(ClauseShape::Full {
                comp: Some(Comp::Relative(d)),
                finite,
            })
        }
        _ if is_finite_pos(pos) => clause(ClauseShape::Full {
            comp: None,
            finite: d,
        }),
        _ => None,
    }
}

fn finite_dependent(dep: &DepTree, d: usize) -> Option<usize> {
    dep.dependents(d)
        .iter()
        .copied()
        .find(|&c| is_finite_pos(dep.pos(c)))
}
