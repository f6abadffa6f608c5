//! Combining query evidence into the extraposition verdict.
//!
//! Five factors feed the binary decision per reading:
//!
//! * `W = n_w * v_w`, the validated popularity of the what-cleft probe;
//! * `r = n_X / n_it`, the comparative expletiveness ratio (alternative
//!   pronouns vs. `it`), with sentinels `R_scarce` when both counts are
//!   insufficient and `R_zero` when the `it` version alone returns nothing;
//! * `r'`, the same ratio over the stepped-down queries (`r' = r` when no
//!   stepped-down pair exists);
//! * `R`, which is `r` if the full queries produced enough results, else `r'`;
//! * `S`, whether the reading bears the false-positive-prone
//!   `it verb infinitive` shape.
//!
//! The verdict is `E = R < R_exp`, additionally requiring `W > N_min` when
//! `S` holds. Smaller `R` means the alternative pronouns are rare in this
//! frame, which is the signature of an expletive subject.

use crate::corpus::{validate_what_cleft, CorpusError, CountBackend, HitResult};
use crate::filters::{CleftCue, FilterReason};
use crate::label::ItLabel;
use crate::querygen::{Purpose, QueryBundle, QueryGroup};
use crate::treebank::GrammaticalRole;
use serde::{Deserialize, Serialize};

/// Decision thresholds. All four are configurable; `R_zero` and `R_scarce`
/// are large sentinels that read as "probably not extrapositional".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionConstants {
    pub n_min: u64,
    pub r_exp: f64,
    pub r_scarce: f64,
    pub r_zero: f64,
}

impl Default for DecisionConstants {
    fn default() -> Self {
        DecisionConstants {
            n_min: 10,
            r_exp: 0.15,
            r_scarce: 1000.0,
            r_zero: 100.0,
        }
    }
}

impl DecisionConstants {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_min < 1 {
            return Err("N_min must be at least 1".into());
        }
        if !(self.r_exp > 0.0 && self.r_exp < self.r_zero && self.r_zero < self.r_scarce) {
            return Err("constants must satisfy 0 < R_exp < R_zero < R_scarce".into());
        }
        Ok(())
    }
}

/// The comparative ratio with its sentinel cases: scarce data on both sides
/// maps to `R_scarce`, a sufficient alternative count against a zero `it`
/// count maps to `R_zero`, everything else is the plain quotient.
pub fn compute_ratio(n_x: u64, n_it: u64, c: &DecisionConstants) -> f64 {
    if n_it.max(n_x) < c.n_min {
        c.r_scarce
    } else if n_x >= c.n_min && n_it == 0 {
        c.r_zero
    } else {
        n_x as f64 / n_it as f64
    }
}

/// `R`: the full-query ratio when the full queries yielded enough results,
/// the stepped-down ratio otherwise.
pub fn synthesize_r(r: f64, r_prime: f64, n_it: u64, n_x: u64, c: &DecisionConstants) -> f64 {
    if n_it.max(n_x) >= c.n_min {
        r
    } else {
        r_prime
    }
}

/// Where one query's numbers came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryTrace {
    pub purpose: String,
    pub query: String,
    pub count: u64,
    pub backend: String,
    pub cached: bool,
}

/// Optional missing-object probe results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pattern3Evidence {
    pub compound: u64,
    pub gerund_prep: u64,
    pub gerund_det: u64,
    /// Transitive-verb dominance detected: the reading was vetoed.
    pub veto: bool,
}

/// Raw counts and derived factors for one reading, sufficient to re-derive
/// the verdict by hand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceRecord {
    pub n_w: u64,
    pub v_w: f64,
    pub n_it: u64,
    pub n_x: u64,
    pub n_prime_it: u64,
    pub n_prime_x: u64,
    pub w: f64,
    pub r: f64,
    pub r_prime: f64,
    pub big_r: f64,
    pub s_flag: bool,
    pub e: bool,
    pub queries: Vec<QueryTrace>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pattern3: Option<Pattern3Evidence>,
}

/// The binary extraposition decision for a completed evidence record.
pub fn classify_reading(ev: &EvidenceRecord, c: &DecisionConstants) -> bool {
    let base = ev.big_r < c.r_exp;
    if ev.s_flag {
        base && ev.w > c.n_min as f64
    } else {
        base
    }
}

/// Options for evidence gathering.
#[derive(Debug, Clone, Copy)]
pub struct EvidenceOptions {
    pub constants: DecisionConstants,
    /// Use the missing-object probes as a referential veto.
    pub pattern3_veto: bool,
    /// Gerund-determiner count must exceed the preposition count by this
    /// factor before the veto fires.
    pub pattern3_dominance: f64,
}

impl Default for EvidenceOptions {
    fn default() -> Self {
        EvidenceOptions {
            constants: DecisionConstants::default(),
            pattern3_veto: false,
            pattern3_dominance: 2.0,
        }
    }
}

fn group_count<B: CountBackend>(
    backend: &B,
    group: &QueryGroup,
    traces: &mut Vec<QueryTrace>,
) -> Result<u64, CorpusError> {
    let mut total = 0u64;
    for q in &group.queries {
        let hit = backend.search(&q.phrase, 0)?;
        traces.push(QueryTrace {
            purpose: q.purpose.name().to_string(),
            query: q.phrase.canonical(),
            count: hit.count,
            backend: backend.name().to_string(),
            cached: hit.from_cache,
        });
        total += hit.count;
    }
    Ok(total)
}

/// Execute a reading's query bundle and assemble its evidence record.
///
/// The subject patterns contribute `W`, `r`, `r'`; object-extraposition
/// bundles carry only their pronoun pair, which maps onto `r` with `r' = r`
/// and `W = 0`. When the stepped-down pair is absent the full pair is
/// reused, so `r' = r` there as well.
pub fn evaluate_bundle<B: CountBackend>(
    bundle: &QueryBundle,
    s_flag: bool,
    backend: &B,
    opts: &EvidenceOptions,
) -> Result<EvidenceRecord, CorpusError> {
    let c = &opts.constants;
    let mut traces = Vec::new();

    let (n_w, v_w) = match bundle.group(Purpose::PatternI) {
        Some(group) => {
            let batch = backend.capabilities().snippet_batch;
            let mut count = 0u64;
            let mut snippets = Vec::new();
            let mut valid_weight = 0.0;
            for q in &group.queries {
                let hit: HitResult = backend.search(&q.phrase, batch)?;
                traces.push(QueryTrace {
                    purpose: q.purpose.name().to_string(),
                    query: q.phrase.canonical(),
                    count: hit.count,
                    backend: backend.name().to_string(),
                    cached: hit.from_cache,
                });
                valid_weight +=
                    validate_what_cleft(&hit.snippets, &q.phrase) * hit.snippets.len() as f64;
                snippets.extend(hit.snippets);
                count += hit.count;
            }
            let v = if snippets.is_empty() {
                0.0
            } else {
                valid_weight / snippets.len() as f64
            };
            (count, v)
        }
        None => (0, 0.0),
    };

    let (n_it, n_x) = match (
        bundle.group(Purpose::PatternIiIt),
        bundle.group(Purpose::PatternIiOthers),
    ) {
        (Some(it_group), Some(x_group)) => (
            group_count(backend, it_group, &mut traces)?,
            group_count(backend, x_group, &mut traces)?,
        ),
        _ => {
            // Object-extraposition bundle.
            let it_group = bundle
                .group(Purpose::ObjectIt)
                .expect("object bundle has the it query");
            let x_group = bundle
                .group(Purpose::ObjectThem)
                .expect("object bundle has the them query");
            (
                group_count(backend, it_group, &mut traces)?,
                group_count(backend, x_group, &mut traces)?,
            )
        }
    };

    let (n_prime_it, n_prime_x) = match (
        bundle.group(Purpose::PatternIiPrimeIt),
        bundle.group(Purpose::PatternIiPrimeOthers),
    ) {
        (Some(it_group), Some(x_group)) => (
            group_count(backend, it_group, &mut traces)?,
            group_count(backend, x_group, &mut traces)?,
        ),
        _ => (n_it, n_x),
    };

    let r = compute_ratio(n_x, n_it, c);
    let r_prime = compute_ratio(n_prime_x, n_prime_it, c);
    let big_r = synthesize_r(r, r_prime, n_it, n_x, c);
    let w = n_w as f64 * v_w;

    let pattern3 = match (
        bundle.group(Purpose::P3Compound),
        bundle.group(Purpose::P3GerundPrep),
        bundle.group(Purpose::P3GerundDet),
    ) {
        (Some(comp), Some(prep), Some(det)) => {
            let compound = group_count(backend, comp, &mut traces)?;
            let gerund_prep = group_count(backend, prep, &mut traces)?;
            let gerund_det = group_count(backend, det, &mut traces)?;
            let veto = opts.pattern3_veto
                && gerund_det as f64 >= opts.pattern3_dominance * gerund_prep.max(1) as f64;
            Some(Pattern3Evidence {
                compound,
                gerund_prep,
                gerund_det,
                veto,
            })
        }
        _ => None,
    };

    let mut ev = EvidenceRecord {
        n_w,
        v_w,
        n_it,
        n_x,
        n_prime_it,
        n_prime_x,
        w,
        r,
        r_prime,
        big_r,
        s_flag,
        e: false,
        queries: traces,
        pattern3,
    };
    let mut e = classify_reading(&ev, c);
    if let Some(p3) = &ev.pattern3 {
        if p3.veto {
            e = false;
        }
    }
    ev.e = e;
    Ok(ev)
}

/// Per-reading outcome in an instance record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReadingOutcome {
    WeatherTime,
    Cleft { cue: CleftCue },
    Extraposition { evidence: Box<EvidenceRecord> },
    FilteredOut { reason: FilterReason },
    ParseDefect,
}

/// One reading as reported in the output record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadingReport {
    pub matrix_verb: String,
    pub virtual_copula: bool,
    pub parenthetical: bool,
    pub outcome: ReadingOutcome,
}

/// Classification of one `it` instance, with the full evidence trail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub sentence_id: String,
    pub token_index: usize,
    pub token: String,
    pub role: GrammaticalRole,
    pub label: ItLabel,
    pub system: String,
    pub readings: Vec<ReadingReport>,
}

/// Aggregate reading outcomes to the instance label. Weather/time wins over
/// cleft, cleft over extraposition, and anything else is referential. The
/// result does not depend on reading order.
pub fn classify_instance(readings: &[ReadingReport]) -> ItLabel {
    let any = |pred: fn(&ReadingOutcome) -> bool| readings.iter().any(|r| pred(&r.outcome));
    if any(|o| matches!(o, ReadingOutcome::WeatherTime)) {
        ItLabel::WeatherTime
    } else if any(|o| matches!(o, ReadingOutcome::Cleft { .. })) {
        ItLabel::Cleft
    } else if any(|o| matches!(o, ReadingOutcome::Extraposition { evidence } if evidence.e)) {
        ItLabel::Extraposition
    } else {
        ItLabel::Referential
    }
}
