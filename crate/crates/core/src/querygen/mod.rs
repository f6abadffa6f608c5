//! Instantiation of hit-count query patterns from extraposition candidates.
//!
//! Three pattern families are generated per candidate:
//!
//! * the what-cleft probe (`what` + matrix VP + copula + stub), whose
//!   validated count gauges whether the sentence has a viable what-cleft
//!   counterpart;
//! * the comparative expletiveness pair (`it`/`which|this|who|he` + matrix
//!   VP + simplified clause), plus a stepped-down pair that replaces the
//!   simplified clause with the bare stub `to` when the clause is an
//!   infinitive, for-infinitive, or gerund;
//! * for object extrapositions, `verb [prep] it|them that` + stub.
//!
//! Matrix verbs are expanded to third-person-singular present plus simple
//! past, objects are truncated to a stub plus head word, and the extraposed
//! clause is reduced to its leading material plus a stub that constrains
//! what may follow. Backends without alternation support instead get
//! single-form queries (3sg verbs, simplest stubs) whose counts the caller
//! sums.

pub mod morph;

use crate::filters::{ClauseForm, ExtrapositionCandidate, MatrixKind};
use crate::treebank::{ClauseShape, DepTree, MatrixVerb};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One position of a phrase query: a literal word or an ordered alternation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Slot {
    Word(String),
    Alt(Vec<String>),
}

impl Slot {
    pub fn word(w: impl Into<String>) -> Slot {
        Slot::Word(w.into().to_lowercase())
    }

    pub fn alt<I: IntoIterator<Item = S>, S: Into<String>>(words: I) -> Slot {
        let mut seen = Vec::new();
        for w in words {
            let w = w.into().to_lowercase();
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        Slot::Alt(seen)
    }

    pub fn forms(&self) -> &[String] {
        match self {
            Slot::Word(w) => std::slice::from_ref(w),
            Slot::Alt(ws) => ws,
        }
    }
}

/// The word sequence of a query, independent of its purpose tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhraseQuery {
    pub slots: Vec<Slot>,
}

impl PhraseQuery {
    pub fn new(slots: Vec<Slot>) -> Self {
        PhraseQuery { slots }
    }

    /// Canonical text form: lowercase, single spaces, alternations joined
    /// by `|`. This is the fixture/cache key.
    pub fn canonical(&self) -> String {
        self.slots
            .iter()
            .map(|s| s.forms().join("|"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Submission/display form with alternation members space-separated,
    /// as printed in engine-style query listings.
    pub fn flat(&self) -> String {
        self.slots
            .iter()
            .flat_map(|s| s.forms().iter().map(String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of [`canonical`](Self::canonical).
    pub fn parse_canonical(text: &str) -> Result<Self, QuerygenError> {
        let mut slots = Vec::new();
        for part in text.split_whitespace() {
            let words: Vec<String> = part
                .split('|')
                .filter(|w| !w.is_empty())
                .map(|w| w.to_lowercase())
                .collect();
            match words.len() {
                0 => return Err(QuerygenError::EmptyQuerySlot),
                1 => slots.push(Slot::Word(words.into_iter().next().unwrap())),
                _ => slots.push(Slot::Alt(words)),
            }
        }
        if slots.len() < 2 {
            return Err(QuerygenError::QueryTooShort(text.to_string()));
        }
        Ok(PhraseQuery { slots })
    }

    /// All single-form queries of the alternation (cartesian product).
    pub fn explode(&self) -> Vec<PhraseQuery> {
        let mut out: Vec<Vec<Slot>> = vec![Vec::new()];
        for slot in &self.slots {
            let mut next = Vec::new();
            for prefix in &out {
                for form in slot.forms() {
                    let mut q = prefix.clone();
                    q.push(Slot::Word(form.clone()));
                    next.push(q);
                }
            }
            out = next;
        }
        out.into_iter().map(PhraseQuery::new).collect()
    }
}

impl std::fmt::Display for PhraseQuery {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Purpose {
    PatternI,
    PatternIiIt,
    PatternIiOthers,
    PatternIiPrimeIt,
    PatternIiPrimeOthers,
    ObjectIt,
    ObjectThem,
    P3Compound,
    P3GerundPrep,
    P3GerundDet,
}

impl Purpose {
    pub fn name(self) -> &'static str {
        match self {
            Purpose::PatternI => "pattern-i",
            Purpose::PatternIiIt => "pattern-ii-it",
            Purpose::PatternIiOthers => "pattern-ii-others",
            Purpose::PatternIiPrimeIt => "pattern-ii'-it",
            Purpose::PatternIiPrimeOthers => "pattern-ii'-others",
            Purpose::ObjectIt => "object-it",
            Purpose::ObjectThem => "object-them",
            Purpose::P3Compound => "p3-compound",
            Purpose::P3GerundPrep => "p3-gerund-prep",
            Purpose::P3GerundDet => "p3-gerund-det",
        }
    }
}

/// A purpose-tagged query. Queries are always submitted quoted (as exact
/// phrases); the flag is carried for the record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Query {
    pub phrase: PhraseQuery,
    pub purpose: Purpose,
    pub quoted: bool,
}

impl Query {
    fn new(purpose: Purpose, slots: Vec<Slot>) -> Self {
        Query {
            phrase: PhraseQuery::new(slots),
            purpose,
            quoted: true,
        }
    }
}

/// Word lists for stub and truncation slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StubSet {
    /// Possessive pronouns.
    pub prps: Vec<String>,
    /// General determiners.
    pub dta: Vec<String>,
    /// Definite article plus singular demonstratives.
    pub dtts: Vec<String>,
    /// Definite article plus plural demonstratives.
    pub dttp: Vec<String>,
    /// Personal pronouns (proper-noun truncation).
    pub prp: Vec<String>,
    /// Possessives admitted into noun-phrase stubs.
    pub stub_possessives: Vec<String>,
    /// Subject pronouns admitted into subject-position stubs.
    pub stub_subject_pronouns: Vec<String>,
    /// Alternative subject pronouns for the expletiveness test.
    pub other_pronouns: Vec<String>,
}

const BUNDLED_STUBS: &str = include_str!("../../data/stub_sets.conf");

static DEFAULT_STUBS: Lazy<StubSet> =
    Lazy::new(|| StubSet::parse(BUNDLED_STUBS).expect("bundled stub lists parse"));

impl Default for StubSet {
    fn default() -> Self {
        DEFAULT_STUBS.clone()
    }
}

impl StubSet {
    /// Parse stub lists from a `key = word, word, ...` file.
    pub fn parse(text: &str) -> Result<Self, QuerygenError> {
        let mut set = StubSet {
            prps: Vec::new(),
            dta: Vec::new(),
            dtts: Vec::new(),
            dttp: Vec::new(),
            prp: Vec::new(),
            stub_possessives: Vec::new(),
            stub_subject_pronouns: Vec::new(),
            other_pronouns: Vec::new(),
        };
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(QuerygenError::MalformedStubList(n + 1))?;
            let list: Vec<String> = value
                .split(',')
                .map(|w| w.trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect();
            match key.trim() {
                "prps" => set.prps = list,
                "dta" => set.dta = list,
                "dtts" => set.dtts = list,
                "dttp" => set.dttp = list,
                "prp" => set.prp = list,
                "stub_possessives" => set.stub_possessives = list,
                "stub_subject_pronouns" => set.stub_subject_pronouns = list,
                "other_pronouns" => set.other_pronouns = list,
                _ => return Err(QuerygenError::MalformedStubList(n + 1)),
            }
        }
        let lists = [
            &set.prps,
            &set.dta,
            &set.dtts,
            &set.dttp,
            &set.prp,
            &set.other_pronouns,
        ];
        if lists.iter().any(|l| l.is_empty()) {
            return Err(QuerygenError::MalformedStubList(0));
        }
        Ok(set)
    }

    /// Stub constraining an object-position noun phrase.
    fn np_object(&self) -> Vec<String> {
        let mut v = self.dta.clone();
        v.extend(self.stub_possessives.iter().cloned());
        v
    }

    /// Stub constraining a subject-position noun phrase (after a
    /// complementizer): determiners, subject pronouns, possessives.
    fn np_subject(&self) -> Vec<String> {
        let mut v = self.dta.clone();
        v.extend(self.stub_subject_pronouns.iter().cloned());
        v.extend(self.stub_possessives.iter().cloned());
        v
    }
}

/// Whether the target engine accepts alternations inside quoted phrases.
/// Without that support, verbs stay in third-person-singular present and
/// stubs in their simplest form, and any remaining alternation is exploded
/// into single-form queries whose counts the corpus layer sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineMode {
    Alternation,
    SimpleForms,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuerygenError {
    #[error("clause form not supported by simplification")]
    UnsupportedClauseForm,
    #[error("candidate has no matrix verb")]
    NoMatrixVerb,
    #[error("pattern not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("canonical query has an empty slot")]
    EmptyQuerySlot,
    #[error("canonical query too short: `{0}`")]
    QueryTooShort(String),
    #[error("stub list file: bad or missing entry at line {0}")]
    MalformedStubList(usize),
}

/// What the stub must license after the simplified clause head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StubKind {
    /// Original text lacks a nominal object: no stub.
    Null,
    /// The clause's own embedded complementizer.
    Comp(String),
    /// A following noun phrase in object position.
    NpObject,
    /// A following noun phrase in subject position.
    NpSubject,
}

/// A simplified extraposed clause: leading tokens plus a stub class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifiedClause {
    pub head_tokens: Vec<String>,
    pub stub: StubKind,
}

/// Reduce the extraposed clause per its form: infinitives and gerunds keep
/// only their verb, full clauses only their complementizer (bare clauses
/// get `that`), and for-infinitives drop their subject, flipping a passive
/// `to be <participle>` into the active verb.
pub fn simplify_clause(
    candidate: &ExtrapositionCandidate,
    dep: &DepTree,
) -> Result<SimplifiedClause, QuerygenError> {
    let clause = &candidate.clause;
    match clause.shape {
        ClauseShape::Infinitive { verb, .. } => {
            let mut toks = vec!["to".to_string()];
            toks.extend(verb_with_particles(dep, verb));
            Ok(SimplifiedClause {
                head_tokens: toks,
                stub: stub_after_verb(dep, verb),
            })
        }
        ClauseShape::ForInfinitive { verb, subject, .. } => {
            let mut toks = vec!["to".to_string()];
            let stub = if let Some(flipped) = passive_flip(dep, verb) {
                toks.push(flipped);
                if subject.is_some() {
                    StubKind::NpObject
                } else {
                    StubKind::Null
                }
            } else {
                toks.extend(verb_with_particles(dep, verb));
                stub_after_verb(dep, verb)
            };
            Ok(SimplifiedClause {
                head_tokens: toks,
                stub,
            })
        }
        ClauseShape::Gerund { verb } => Ok(SimplifiedClause {
            head_tokens: verb_with_particles(dep, verb),
            stub: stub_after_verb(dep, verb),
        }),
        ClauseShape::Full { .. } => {
            let comp = candidate
                .comp_word
                .clone()
                .unwrap_or_else(|| "that".to_string());
            Ok(SimplifiedClause {
                head_tokens: vec![comp],
                stub: StubKind::NpSubject,
            })
        }
    }
}

/// `for X to be VBN` reads as passive; return the active base verb.
fn passive_flip(dep: &DepTree, v: usize) -> Option<String> {
    if !crate::treebank::is_be_form(dep.token(v)) {
        return None;
    }
    let participle = dep
        .dependents(v)
        .iter()
        .copied()
        .find(|&d| d > v && dep.pos(d) == "VBN")?;
    Some(morph::verb_lemma(dep.token(participle)))
}

fn verb_with_particles(dep: &DepTree, v: usize) -> Vec<String> {
    let mut toks = vec![dep.token_lower(v)];
    for &d in dep.dependents(v) {
        if d > v && dep.pos(d) == "RP" {
            toks.push(dep.token_lower(d));
        }
    }
    toks
}

/// Stub licensing for the material following a simplified clause verb: an
/// embedded complementizer beats a nominal object; nothing otherwise.
fn stub_after_verb(dep: &DepTree, v: usize) -> StubKind {
    for &d in dep.dependents(v) {
        if d <= v {
            continue;
        }
        if let Some(c) = crate::treebank::clause_shape(dep, d) {
            if let ClauseShape::Full {
                comp: Some(comp), ..
            } = c.shape
            {
                let word = dep.token_lower(comp.token_index());
                if word != "which" && word != "who" {
                    return StubKind::Comp(word);
                }
            }
            continue;
        }
        if matches!(
            dep.pos(d),
            "NN" | "NNS" | "NNP" | "NNPS" | "PRP" | "CD" | "$"
        ) {
            return StubKind::NpObject;
        }
    }
    StubKind::Null
}

/// Expand a matrix verb into its query slot: third-person-singular present
/// plus simple past, with the copula getting `is|was|'s`.
pub fn expand_verb(surface: &str, mode: EngineMode) -> Slot {
    let lemma = morph::verb_lemma(surface);
    if lemma == "be" {
        return match mode {
            EngineMode::Alternation => Slot::alt(["is", "was", "'s"]),
            EngineMode::SimpleForms => Slot::word("is"),
        };
    }
    let third = morph::third_singular(&lemma);
    match mode {
        EngineMode::Alternation => {
            let past = morph::simple_past(&lemma);
            Slot::alt([third, past])
        }
        EngineMode::SimpleForms => Slot::Word(third),
    }
}

/// Truncate the matrix object/predicate to a coverage-friendly rendition.
pub fn truncate_object(
    dep: &DepTree,
    head: Option<usize>,
    negation_or_too: &[usize],
    stubs: &StubSet,
    mode: EngineMode,
) -> Vec<Slot> {
    let Some(h) = head else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let pos = dep.pos(h);
    if matches!(pos, "JJ" | "JJR" | "JJS" | "RB" | "RBR" | "RBS") {
        for &m in negation_or_too {
            let tok = dep.token_lower(m);
            out.push(Slot::word(if tok == "n't" {
                "not".to_string()
            } else {
                tok
            }));
        }
        out.push(Slot::word(dep.token_lower(h)));
        return out;
    }
    if matches!(pos, "NNP" | "NNPS" | "PRP") {
        out.push(render_list(&stubs.prp, "it", mode));
        return out;
    }
    if pos == "CD" || pos == "$" {
        out.push(Slot::word("a"));
        out.push(Slot::word("lot"));
        return out;
    }
    if pos == "IN" || pos == "TO" {
        out.push(Slot::word(dep.token_lower(h)));
        let obj = dep
            .dependents(h)
            .iter()
            .copied()
            .find(|&d| d > h && !crate::treebank::is_punct_pos(dep.pos(d)));
        out.extend(truncate_object(dep, obj, &[], stubs, mode));
        return out;
    }
    // Common noun phrases.
    let has_possessive = dep.dependents(h).iter().any(|&d| {
        dep.pos(d) == "PRP$"
            || dep.pos(d) == "POS"
            || (d < h && dep.dependents(d).iter().any(|&g| dep.pos(g) == "POS"))
    });
    let has_of_pp = dep
        .dependents(h)
        .iter()
        .any(|&d| d > h && dep.pos(d) == "IN" && dep.token_lower(d) == "of");
    if has_possessive || has_of_pp {
        out.push(render_list(&stubs.prps, "its", mode));
        out.push(Slot::word(dep.token_lower(h)));
        return out;
    }
    let det = dep
        .dependents(h)
        .iter()
        .copied()
        .find(|&d| d < h && dep.pos(d) == "DT");
    if let Some(d) = det {
        let plural = pos.ends_with('S');
        let list = match dep.token_lower(d).as_str() {
            "this" | "that" => &stubs.dtts,
            "these" | "those" => &stubs.dttp,
            "the" => {
                if plural {
                    &stubs.dttp
                } else {
                    &stubs.dtts
                }
            }
            _ => &stubs.dta,
        };
        let simple = if matches!(dep.token_lower(d).as_str(), "a" | "an") {
            "a"
        } else {
            "the"
        };
        out.push(render_list(list, simple, mode));
        out.push(Slot::word(dep.token_lower(h)));
        return out;
    }
    out.push(Slot::word(dep.token_lower(h)));
    out
}

fn render_list(list: &[String], simple: &str, mode: EngineMode) -> Slot {
    match mode {
        EngineMode::Alternation => Slot::alt(list.iter().cloned()),
        EngineMode::SimpleForms => Slot::word(simple),
    }
}

fn render_stub(stub: &StubKind, stubs: &StubSet, mode: EngineMode) -> Vec<Slot> {
    match stub {
        StubKind::Null => Vec::new(),
        StubKind::Comp(w) => vec![Slot::word(w.clone())],
        StubKind::NpObject => vec![render_list(&stubs.np_object(), "the", mode)],
        StubKind::NpSubject => vec![render_list(&stubs.np_subject(), "the", mode)],
    }
}

/// The instantiated queries for one candidate, grouped by purpose. A group
/// holds one alternation query, or its single-form explosion when the
/// engine cannot take alternations; per-purpose counts are the sums over
/// the group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryGroup {
    pub purpose: Purpose,
    pub queries: Vec<Query>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryBundle {
    pub groups: Vec<QueryGroup>,
}

impl QueryBundle {
    pub fn group(&self, purpose: Purpose) -> Option<&QueryGroup> {
        self.groups.iter().find(|g| g.purpose == purpose)
    }

    pub fn has(&self, purpose: Purpose) -> bool {
        self.group(purpose).is_some()
    }
}

/// Build the full query bundle for a candidate.
pub fn build_bundle(
    candidate: &ExtrapositionCandidate,
    dep: &DepTree,
    stubs: &StubSet,
    mode: EngineMode,
    pattern3: bool,
) -> Result<QueryBundle, QuerygenError> {
    let mut groups = Vec::new();
    match candidate.matrix_kind {
        MatrixKind::ObjectOfVerb | MatrixKind::ObjectOfPreposition => {
            let verb = match candidate.reading.matrix {
                MatrixVerb::Node(v) => v,
                MatrixVerb::VirtualCopula { .. } => return Err(QuerygenError::NoMatrixVerb),
            };
            let mut base: Vec<Slot> = verb_with_particles(dep, verb)
                .into_iter()
                .map(Slot::Word)
                .collect();
            if let Some(p) = candidate.reading.preposition {
                base.push(Slot::word(dep.token_lower(p)));
            }
            for (purpose, pronoun) in [(Purpose::ObjectIt, "it"), (Purpose::ObjectThem, "them")] {
                let mut slots = base.clone();
                slots.push(Slot::word(pronoun));
                slots.push(Slot::word("that"));
                slots.push(Slot::word("the"));
                groups.push(make_group(purpose, slots, mode));
            }
        }
        MatrixKind::CopulaWithPredicate | MatrixKind::GeneralVerb => {
            let mut vp: Vec<Slot> = vec![expand_verb(candidate.reading.matrix_surface(dep), mode)];
            vp.extend(truncate_object(
                dep,
                candidate.predicate,
                &candidate.reading.negation_or_too,
                stubs,
                mode,
            ));
            let sc = simplify_clause(candidate, dep)?;
            let stub_slots = render_stub(&sc.stub, stubs, mode);

            let mut pat1 = vec![Slot::word("what")];
            pat1.extend(vp.iter().cloned());
            pat1.push(match mode {
                EngineMode::Alternation => Slot::alt(["is", "was"]),
                EngineMode::SimpleForms => Slot::word("is"),
            });
            pat1.push(Slot::word(sc.head_tokens[0].clone()));
            groups.push(make_group(Purpose::PatternI, pat1, mode));

            let others = render_list(&stubs.other_pronouns, "he", EngineMode::Alternation);
            for (purpose, subject) in [
                (Purpose::PatternIiIt, Slot::word("it")),
                (Purpose::PatternIiOthers, others.clone()),
            ] {
                let mut slots = vec![subject];
                slots.extend(vp.iter().cloned());
                slots.extend(sc.head_tokens.iter().map(|t| Slot::word(t.clone())));
                slots.extend(stub_slots.iter().cloned());
                groups.push(make_group(purpose, slots, mode));
            }
            // The stepped-down pair exists only when the clause reduces
            // naturally onto a bare `to`; in other situations no downgraded
            // version applies and the decision stage reuses the full pair.
            if matches!(
                candidate.clause_form,
                ClauseForm::Infinitive | ClauseForm::ForInfinitive | ClauseForm::Gerund
            ) {
                for (purpose, subject) in [
                    (Purpose::PatternIiPrimeIt, Slot::word("it")),
                    (Purpose::PatternIiPrimeOthers, others),
                ] {
                    let mut slots = vec![subject];
                    slots.extend(vp.iter().cloned());
                    slots.push(Slot::word("to"));
                    groups.push(make_group(purpose, slots, mode));
                }
            }
            if pattern3 {
                if let Ok(p3) = build_pattern3(candidate, dep) {
                    for q in p3 {
                        groups.push(QueryGroup {
                            purpose: q.purpose,
                            queries: explode_for(mode, q),
                        });
                    }
                }
            }
        }
    }
    Ok(QueryBundle { groups })
}

fn make_group(purpose: Purpose, slots: Vec<Slot>, mode: EngineMode) -> QueryGroup {
    QueryGroup {
        purpose,
        queries: explode_for(mode, Query::new(purpose, slots)),
    }
}

fn explode_for(mode: EngineMode, q: Query) -> Vec<Query> {
    match mode {
        EngineMode::Alternation => vec![q],
        EngineMode::SimpleForms => q
            .phrase
            .explode()
            .into_iter()
            .map(|phrase| Query {
                phrase,
                purpose: q.purpose,
                quoted: true,
            })
            .collect(),
    }
}

/// Missing-object probes: the compound-adjective test (`an
/// easy-to-program`) and the gerund transitivity pair (`that programming
/// in|from` vs `that programming the`).
pub fn build_pattern3(
    candidate: &ExtrapositionCandidate,
    dep: &DepTree,
) -> Result<Vec<Query>, QuerygenError> {
    let pred = candidate
        .predicate
        .ok_or(QuerygenError::NotApplicable("no adjectival predicate"))?;
    if !matches!(dep.pos(pred), "JJ" | "JJR" | "JJS") {
        return Err(QuerygenError::NotApplicable("predicate not adjectival"));
    }
    let verb = match candidate.clause.shape {
        ClauseShape::Infinitive { verb, .. } => verb,
        _ => return Err(QuerygenError::NotApplicable("clause not an infinitive")),
    };
    let has_object = dep.dependents(verb).iter().any(|&d| {
        d > verb
            && matches!(
                dep.pos(d),
                "NN" | "NNS" | "NNP" | "NNPS" | "PRP" | "CD" | "$"
            )
    });
    if has_object {
        return Err(QuerygenError::NotApplicable(
            "infinitive verb has an object",
        ));
    }
    let adj = morph::adjective_base(dep.token(pred));
    let verb_base = dep.token_lower(verb);
    let compound = format!("{adj}-to-{verb_base}");
    let article = if adj.starts_with(['a', 'e', 'i', 'o', 'u']) {
        "an"
    } else {
        "a"
    };
    let gerund = morph::gerund(&verb_base);
    Ok(vec![
        Query::new(
            Purpose::P3Compound,
            vec![Slot::word(article), Slot::Word(compound)],
        ),
        Query::new(
            Purpose::P3GerundPrep,
            vec![
                Slot::word("that"),
                Slot::Word(gerund.clone()),
                Slot::alt(["in", "from"]),
            ],
        ),
        Query::new(
            Purpose::P3GerundDet,
            vec![Slot::word("that"), Slot::Word(gerund), Slot::word("the")],
        ),
    ])
}
