//! Scoring against gold annotations: precision/recall/F per category, 95%
//! bootstrap percentile intervals (with an adjusted Wald interval standing
//! in when the point estimate is 0% or 100%), approximate randomization
//! significance tests between two systems, and Cohen's kappa for annotator
//! agreement.
//!
//! Randomness is fully reproducible: every bootstrap replicate and shuffle
//! draws from its own ChaCha8 substream (`seed` + replicate index), so
//! results are identical across runs and across thread counts.

use crate::label::ItLabel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("empty sample")]
    EmptySample,
    #[error("outputs are not aligned: {0}")]
    MisalignedOutputs(String),
    #[error("metric undefined (zero denominator)")]
    UndefinedMetric,
    #[error("kappa undefined: chance agreement is 1")]
    DegenerateMarginals,
}

/// One gold annotation row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldAnnotation {
    pub sentence_id: String,
    pub token_index: usize,
    pub label: ItLabel,
}

/// Parse the gold TSV: `sentence_id<TAB>token_index<TAB>label`.
pub fn parse_gold_tsv(text: &str) -> Result<Vec<GoldAnnotation>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let err = |what: &str| format!("line {}: {what}", n + 1);
        let sentence_id = fields.next().ok_or_else(|| err("missing id"))?.to_string();
        let token_index: usize = fields
            .next()
            .ok_or_else(|| err("missing token index"))?
            .trim()
            .parse()
            .map_err(|_| err("bad token index"))?;
        let label: ItLabel = fields
            .next()
            .ok_or_else(|| err("missing label"))?
            .parse()
            .map_err(|e: String| err(&e))?;
        out.push(GoldAnnotation {
            sentence_id,
            token_index,
            label,
        });
    }
    Ok(out)
}

/// One instance scored against gold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoredInstance {
    pub pred: ItLabel,
    pub gold: ItLabel,
}

/// Align predictions with gold rows on (sentence_id, token_index). Both
/// directions must match exactly.
pub fn align(
    gold: &[GoldAnnotation],
    predictions: &[(String, usize, ItLabel)],
) -> Result<Vec<ScoredInstance>, EvalError> {
    let mut by_key: HashMap<(&str, usize), ItLabel> = HashMap::new();
    for (id, idx, label) in predictions {
        by_key.insert((id.as_str(), *idx), *label);
    }
    if by_key.len() != gold.len() {
        return Err(EvalError::MisalignedOutputs(format!(
            "{} predictions vs {} gold rows",
            by_key.len(),
            gold.len()
        )));
    }
    gold.iter()
        .map(|g| {
            by_key
                .get(&(g.sentence_id.as_str(), g.token_index))
                .map(|p| ScoredInstance {
                    pred: *p,
                    gold: g.label,
                })
                .ok_or_else(|| {
                    EvalError::MisalignedOutputs(format!(
                        "no prediction for {}#{}",
                        g.sentence_id, g.token_index
                    ))
                })
        })
        .collect()
}

/// A scoring category: one label, or the pleonastic union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Category {
    Label(ItLabel),
    Pleonastic,
}

impl Category {
    pub fn contains(self, label: ItLabel) -> bool {
        match self {
            Category::Label(l) => l == label,
            Category::Pleonastic => label.is_pleonastic(),
        }
    }

    pub fn name(self) -> String {
        match self {
            Category::Label(l) => l.to_string(),
            Category::Pleonastic => "overall".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
}

pub fn confusion(instances: &[ScoredInstance], category: Category) -> ConfusionCounts {
    let mut c = ConfusionCounts::default();
    for i in instances {
        let p = category.contains(i.pred);
        let g = category.contains(i.gold);
        match (p, g) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, true) => c.fn_ += 1,
            (false, false) => {}
        }
    }
    c
}

/// Precision, recall, and balanced F as fractions in [0, 1]. A zero
/// denominator leaves the metric undefined (`None`, reported as n/a).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Prf {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f_measure: Option<f64>,
}

pub fn prf(c: &ConfusionCounts) -> Prf {
    let precision = if c.tp + c.fp > 0 {
        Some(c.tp as f64 / (c.tp + c.fp) as f64)
    } else {
        None
    };
    let recall = if c.tp + c.fn_ > 0 {
        Some(c.tp as f64 / (c.tp + c.fn_) as f64)
    } else {
        None
    };
    let f_measure = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        (Some(_), Some(_)) => Some(0.0),
        _ => None,
    };
    Prf {
        precision,
        recall,
        f_measure,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    Precision,
    Recall,
    FMeasure,
    Accuracy,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Precision => "Precision",
            Statistic::Recall => "Recall",
            Statistic::FMeasure => "F-measure",
            Statistic::Accuracy => "Accuracy",
        }
    }
}

/// Metric value over a set of scored instances; `None` when undefined.
pub fn metric_value(
    instances: &[ScoredInstance],
    statistic: Statistic,
    category: Category,
) -> Option<f64> {
    match statistic {
        Statistic::Accuracy => {
            if instances.is_empty() {
                return None;
            }
            let correct = instances.iter().filter(|i| i.pred == i.gold).count();
            Some(correct as f64 / instances.len() as f64)
        }
        _ => {
            let scores = prf(&confusion(instances, category));
            match statistic {
                Statistic::Precision => scores.precision,
                Statistic::Recall => scores.recall,
                Statistic::FMeasure => scores.f_measure,
                Statistic::Accuracy => unreachable!(),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalMethod {
    BootstrapPercentile,
    AdjustedWald,
}

/// A point estimate with its 95% interval, all in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalEstimate {
    pub point: f64,
    pub lo: f64,
    pub hi: f64,
    pub method: IntervalMethod,
}

/// Critical value used for the adjusted Wald substitution. The published
/// interval endpoints for extreme estimates (e.g. 13/13 → a 79.74% lower
/// bound) correspond to z = 1.645, the one-sided 95% value, rather than the
/// two-sided 1.96; since the substitution only ever applies at 0%/100%
/// where one side is clipped anyway, the one-sided value is the consistent
/// choice and is the default here.
pub const WALD_Z: f64 = 1.645;

/// Adjusted Wald interval for x successes out of n, clipped to [0, 100].
pub fn adjusted_wald(x: u64, n: u64, z: f64) -> IntervalEstimate {
    assert!(n >= 1 && x <= n, "need 0 <= x <= n, n >= 1");
    let z2 = z * z;
    let n_adj = n as f64 + z2;
    let p_adj = (x as f64 + z2 / 2.0) / n_adj;
    let half = z * (p_adj * (1.0 - p_adj) / n_adj).sqrt();
    IntervalEstimate {
        point: 100.0 * x as f64 / n as f64,
        lo: 100.0 * (p_adj - half).max(0.0),
        hi: 100.0 * (p_adj + half).min(1.0),
        method: IntervalMethod::AdjustedWald,
    }
}

/// Bootstrap percentile interval (B replicates, seeded) for a metric over
/// scored instances.
///
/// Instances are resampled with replacement and the metric recomputed per
/// replicate; the 2.5th/97.5th percentiles bound the interval. When the
/// point estimate is exactly 0% or 100% the percentile method degenerates,
/// so the adjusted Wald interval over the metric's own success/trial counts
/// is returned instead (`None` for an extreme F-measure, which has no
/// binomial reading; reports print a dash).
pub fn bootstrap_ci(
    instances: &[ScoredInstance],
    statistic: Statistic,
    category: Category,
    replicates: u64,
    seed: u64,
) -> Result<Option<IntervalEstimate>, EvalError> {
    if instances.is_empty() {
        return Err(EvalError::EmptySample);
    }
    if replicates < 1 {
        return Err(EvalError::EmptySample);
    }
    let point = metric_value(instances, statistic, category).ok_or(EvalError::UndefinedMetric)?;

    if point == 0.0 || point == 1.0 {
        let counts = confusion(instances, category);
        let (x, n) = match statistic {
            Statistic::Precision => (counts.tp, counts.tp + counts.fp),
            Statistic::Recall => (counts.tp, counts.tp + counts.fn_),
            Statistic::Accuracy => (
                instances.iter().filter(|i| i.pred == i.gold).count() as u64,
                instances.len() as u64,
            ),
            Statistic::FMeasure => return Ok(None),
        };
        return Ok(Some(adjusted_wald(x, n, WALD_Z)));
    }

    let n = instances.len();
    let mut values: Vec<f64> = (0..replicates)
        .into_par_iter()
        .filter_map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(rep + 1);
            let sample: Vec<ScoredInstance> =
                (0..n).map(|_| instances[rng.gen_range(0..n)]).collect();
            metric_value(&sample, statistic, category)
        })
        .collect();
    if values.is_empty() {
        return Err(EvalError::UndefinedMetric);
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = values.len();
    let k = (((m + 1) as f64) * 0.025).floor() as usize;
    let k = k.clamp(1, m);
    let lo = values[k - 1];
    let hi = values[m - k];
    Ok(Some(IntervalEstimate {
        point: 100.0 * point,
        // The percentile interval always brackets the full-sample estimate.
        lo: 100.0 * lo.min(point),
        hi: 100.0 * hi.max(point),
        method: IntervalMethod::BootstrapPercentile,
    }))
}

/// Approximate randomization test between two systems on the same
/// instances: per shuffle, each instance's outputs swap with probability
/// one half, and the p-value is the add-one-smoothed share of shuffles
/// whose statistic difference reaches the observed one.
pub fn approx_randomization(
    outputs_a: &[ItLabel],
    outputs_b: &[ItLabel],
    gold: &[ItLabel],
    statistic: Statistic,
    category: Category,
    shuffles: u64,
    seed: u64,
) -> Result<f64, EvalError> {
    if outputs_a.len() != outputs_b.len() || outputs_a.len() != gold.len() {
        return Err(EvalError::MisalignedOutputs(format!(
            "lengths {} / {} / {}",
            outputs_a.len(),
            outputs_b.len(),
            gold.len()
        )));
    }
    if outputs_a.is_empty() {
        return Err(EvalError::EmptySample);
    }
    let n = gold.len();
    let score = |a: &[ItLabel], b: &[ItLabel]| -> f64 {
        let paired = |preds: &[ItLabel]| -> Vec<ScoredInstance> {
            preds
                .iter()
                .zip(gold)
                .map(|(p, g)| ScoredInstance { pred: *p, gold: *g })
                .collect()
        };
        let va = metric_value(&paired(a), statistic, category).unwrap_or(0.0);
        let vb = metric_value(&paired(b), statistic, category).unwrap_or(0.0);
        (va - vb).abs()
    };
    let observed = score(outputs_a, outputs_b);
    let at_least: u64 = (0..shuffles)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(rep + 1);
            let mut a = Vec::with_capacity(n);
            let mut b = Vec::with_capacity(n);
            for i in 0..n {
                if rng.gen_bool(0.5) {
                    a.push(outputs_b[i]);
                    b.push(outputs_a[i]);
                } else {
                    a.push(outputs_a[i]);
                    b.push(outputs_b[i]);
                }
            }
            u64::from(score(&a, &b) >= observed - 1e-12)
        })
        .sum();
    Ok((at_least + 1) as f64 / (shuffles + 1) as f64)
}

/// Cohen's kappa between two aligned annotation lists.
pub fn cohen_kappa<T: Eq + Hash + Clone>(ann1: &[T], ann2: &[T]) -> Result<f64, EvalError> {
    if ann1.len() != ann2.len() {
        return Err(EvalError::MisalignedOutputs(format!(
            "lengths {} / {}",
            ann1.len(),
            ann2.len()
        )));
    }
    if ann1.is_empty() {
        return Err(EvalError::EmptySample);
    }
    let n = ann1.len() as f64;
    let observed = ann1.iter().zip(ann2).filter(|(a, b)| a == b).count() as f64 / n;
    let mut m1: HashMap<&T, f64> = HashMap::new();
    let mut m2: HashMap<&T, f64> = HashMap::new();
    for a in ann1 {
        *m1.entry(a).or_default() += 1.0;
    }
    for b in ann2 {
        *m2.entry(b).or_default() += 1.0;
    }
    let expected: f64 = m1
        .iter()
        .map(|(k, c1)| c1 / n * m2.get(k).copied().unwrap_or(0.0) / n)
        .sum();
    if (1.0 - expected).abs() < 1e-15 {
        return Err(EvalError::DegenerateMarginals);
    }
    Ok((observed - expected) / (1.0 - expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(tp: u64, fp: u64, fn_: u64) -> ConfusionCounts {
        ConfusionCounts { tp, fp, fn_ }
    }

    fn pct(x: Option<f64>) -> f64 {
        (x.unwrap() * 10_000.0).round() / 100.0
    }

    #[test]
    fn prf_reproduces_published_percentages() {
        // Development-set extraposition column: 118 reference, 116
        // identified, 113 correct.
        let p = prf(&counts(113, 3, 5));
        assert_eq!(pct(p.precision), 97.41);
        assert_eq!(pct(p.recall), 95.76);
        assert_eq!(pct(p.f_measure), 96.58);
        // Replicated bracketing baseline, overall pleonastic.
        let p = prf(&counts(105, 89, 35));
        assert_eq!(pct(p.precision), 54.12);
        assert_eq!(pct(p.recall), 75.00);
        assert_eq!(pct(p.f_measure), 62.87);
    }

    #[test]
    fn prf_undefined_cases() {
        let p = prf(&counts(0, 0, 0));
        assert_eq!(p.precision, None);
        assert_eq!(p.recall, None);
        assert_eq!(p.f_measure, None);
        // P and R defined but zero: F is 0, not n/a.
        let p = prf(&counts(0, 2, 3));
        assert_eq!(p.precision, Some(0.0));
        assert_eq!(p.recall, Some(0.0));
        assert_eq!(p.f_measure, Some(0.0));
    }

    #[test]
    fn prf_is_scale_free() {
        for k in [2u64, 5, 17] {
            let a = prf(&counts(113, 3, 5));
            let b = prf(&counts(113 * k, 3 * k, 5 * k));
            assert!((a.precision.unwrap() - b.precision.unwrap()).abs() < 1e-12);
            assert!((a.recall.unwrap() - b.recall.unwrap()).abs() < 1e-12);
            assert!((a.f_measure.unwrap() - b.f_measure.unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn adjusted_wald_endpoints() {
        let ci = adjusted_wald(13, 13, WALD_Z);
        assert!((ci.lo - 79.74).abs() < 0.1, "lo = {}", ci.lo);
        assert_eq!(ci.hi, 100.0);
        let ci = adjusted_wald(9, 9, WALD_Z);
        assert!((ci.lo - 73.07).abs() < 0.1, "lo = {}", ci.lo);
        assert_eq!(ci.hi, 100.0);
        // Further published endpoints for 12/12 and 6/6 samples.
        let ci = adjusted_wald(12, 12, WALD_Z);
        assert!((ci.lo - 78.40).abs() < 0.1, "lo = {}", ci.lo);
        let ci = adjusted_wald(6, 6, WALD_Z);
        assert!((ci.lo - 64.26).abs() < 0.1, "lo = {}", ci.lo);
        // Mirror image at zero successes.
        let lo = adjusted_wald(0, 13, WALD_Z);
        assert_eq!(lo.lo, 0.0);
        assert!((lo.hi - (100.0 - 79.74)).abs() < 0.1);
    }

    fn sample(correct: usize, wrong: usize) -> Vec<ScoredInstance> {
        let mut v = Vec::new();
        for _ in 0..correct {
            v.push(ScoredInstance {
                pred: ItLabel::Cleft,
                gold: ItLabel::Cleft,
            });
        }
        for _ in 0..wrong {
            v.push(ScoredInstance {
                pred: ItLabel::Cleft,
                gold: ItLabel::Referential,
            });
        }
        v
    }

    #[test]
    fn extreme_precision_falls_back_to_wald() {
        let instances = sample(13, 0);
        let ci = bootstrap_ci(
            &instances,
            Statistic::Precision,
            Category::Label(ItLabel::Cleft),
            999,
            7,
        )
        .unwrap()
        .unwrap();
        assert_eq!(ci.method, IntervalMethod::AdjustedWald);
        assert!((ci.lo - 79.74).abs() < 0.1);
        // The extreme F-measure has no binomial interval.
        let f = bootstrap_ci(
            &instances,
            Statistic::FMeasure,
            Category::Label(ItLabel::Cleft),
            999,
            7,
        )
        .unwrap();
        assert!(f.is_none());
    }

    #[test]
    fn bootstrap_is_deterministic_and_brackets_the_point() {
        let mut instances = sample(40, 7);
        instances.extend(sample(0, 0));
        for _ in 0..12 {
            instances.push(ScoredInstance {
                pred: ItLabel::Referential,
                gold: ItLabel::Cleft,
            });
        }
        let run = || {
            bootstrap_ci(
                &instances,
                Statistic::FMeasure,
                Category::Label(ItLabel::Cleft),
                2999,
                42,
            )
            .unwrap()
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
        assert_eq!(a.method, IntervalMethod::BootstrapPercentile);
        assert!(a.lo <= a.point && a.point <= a.hi);
        assert!(a.lo > 0.0 && a.hi < 100.0);
    }

    #[test]
    fn bootstrap_on_a_single_instance() {
        let one = sample(1, 0);
        let ci = bootstrap_ci(
            &one,
            Statistic::Precision,
            Category::Label(ItLabel::Cleft),
            99,
            3,
        )
        .unwrap()
        .unwrap();
        // Point is 100%, so the Wald substitution kicks in.
        assert_eq!(ci.method, IntervalMethod::AdjustedWald);
        assert!(bootstrap_ci(&[], Statistic::Precision, Category::Pleonastic, 99, 3).is_err());
    }

    #[test]
    fn randomization_identical_systems_give_p_one() {
        let gold: Vec<ItLabel> = (0..20)
            .map(|i| {
                if i % 3 == 0 {
                    ItLabel::Extraposition
                } else {
                    ItLabel::Referential
                }
            })
            .collect();
        let a = gold.clone();
        let p = approx_randomization(
            &a,
            &a.clone(),
            &gold,
            Statistic::Accuracy,
            Category::Pleonastic,
            999,
            11,
        )
        .unwrap();
        assert_eq!(p, 1.0);
    }

    #[test]
    fn randomization_matches_exact_enumeration() {
        // A perfect vs. an all-wrong system on n = 10: exactly the all-swap
        // and no-swap patterns reach the observed accuracy gap, so the
        // exact p is 2 / 2^10.
        let n = 10;
        let gold = vec![ItLabel::Extraposition; n];
        let a = vec![ItLabel::Extraposition; n];
        let b = vec![ItLabel::Referential; n];
        let exact = {
            let mut hits = 0u64;
            for mask in 0u32..(1 << n) {
                let swapped = mask.count_ones() as f64;
                let acc_a = (n as f64 - swapped) / n as f64;
                let acc_b = swapped / n as f64;
                if (acc_a - acc_b).abs() >= 1.0 - 1e-12 {
                    hits += 1;
                }
            }
            hits as f64 / f64::from(1u32 << n)
        };
        assert!((exact - 2.0 / 1024.0).abs() < 1e-12);
        let p = approx_randomization(
            &a,
            &b,
            &gold,
            Statistic::Accuracy,
            Category::Pleonastic,
            9999,
            5,
        )
        .unwrap();
        // Monte-Carlo estimate with add-one smoothing hovers near the
        // exact value.
        assert!((p - exact).abs() < 0.004, "p = {p}, exact = {exact}");
        let p2 = approx_randomization(
            &a,
            &b,
            &gold,
            Statistic::Accuracy,
            Category::Pleonastic,
            9999,
            5,
        )
        .unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn perfect_vs_all_wrong_is_significant_at_n20() {
        let n = 20;
        let gold = vec![ItLabel::Extraposition; n];
        let a = vec![ItLabel::Extraposition; n];
        let b = vec![ItLabel::Referential; n];
        let p = approx_randomization(
            &a,
            &b,
            &gold,
            Statistic::Accuracy,
            Category::Pleonastic,
            9999,
            17,
        )
        .unwrap();
        assert!(p <= 0.001, "p = {p}");
    }

    #[test]
    fn kappa_identities() {
        let a = vec!["x", "y", "x", "z", "y", "x"];
        assert!((cohen_kappa(&a, &a.clone()).unwrap() - 1.0).abs() < 1e-12);
        // 2x2 table [[20, 5], [10, 65]]: p_o = 0.85, p_e = 0.60.
        let mut ann1 = Vec::new();
        let mut ann2 = Vec::new();
        for (c1, c2, n) in [
            ("a", "a", 20),
            ("a", "b", 5),
            ("b", "a", 10),
            ("b", "b", 65),
        ] {
            for _ in 0..n {
                ann1.push(c1);
                ann2.push(c2);
            }
        }
        let k = cohen_kappa(&ann1, &ann2).unwrap();
        assert!((k - 0.625).abs() < 1e-9, "kappa = {k}");
        // Degenerate marginals: everything in one category.
        let ones = vec!["x"; 5];
        assert_eq!(
            cohen_kappa(&ones, &ones.clone()),
            Err(EvalError::DegenerateMarginals)
        );
    }

    #[test]
    fn kappa_near_zero_for_independent_labels() {
        // Deterministic pattern with independent 50/50 marginals.
        let n = 10_000;
        let ann1: Vec<u8> = (0..n).map(|i| (i / 2 % 2) as u8).collect();
        let ann2: Vec<u8> = (0..n).map(|i| (i % 2) as u8).collect();
        let k = cohen_kappa(&ann1, &ann2).unwrap();
        assert!(k.abs() < 0.01, "kappa = {k}");
    }
}
