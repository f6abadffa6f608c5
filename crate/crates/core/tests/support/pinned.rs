//! The pinned-sentence table: hand-built gold parses and the verdict each
//! one must receive from syntactic filtering.

use pleonit::filters::{
    evaluate_reading, CleftCue, FilterConfig, FilterReason, MatrixKind, SyntacticVerdict,
};
use pleonit::treebank::{
    find_it_instances, generate_readings, parse_bracketed, to_dependency, DepTree, HeadTable,
    ItInstance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Candidate {
        s_flag: Option<bool>,
        kind: Option<MatrixKind>,
    },
    Cleft(CleftCue),
    WeatherTime,
    Out(Option<FilterReason>),
}

pub fn candidate() -> Expect {
    Expect::Candidate {
        s_flag: None,
        kind: None,
    }
}

pub fn candidate_s(s: bool) -> Expect {
    Expect::Candidate {
        s_flag: Some(s),
        kind: None,
    }
}

pub fn candidate_kind(kind: MatrixKind) -> Expect {
    Expect::Candidate {
        s_flag: None,
        kind: Some(kind),
    }
}

/// (file stem, instance number within the sentence, expected verdict).
pub fn cases() -> Vec<(&'static str, usize, Expect)> {
    use CleftCue::*;
    vec![
        ("wsj_0006_002", 0, candidate_s(true)),
        ("wsj_0041_029", 0, Expect::Out(None)),
        ("wsj_0102_003", 0, Expect::Out(None)),
        ("wsj_0034_020", 0, candidate_s(true)),
        (
            "wsj_0037_034",
            0,
            candidate_kind(MatrixKind::CopulaWithPredicate),
        ),
        ("wsj_0044_026", 0, Expect::Cleft(BareCommonNoun)),
        ("wsj_0591_021", 0, Expect::Cleft(PpWithFullClause)),
        ("wsj_0207_037", 0, Expect::WeatherTime),
        ("wsj_0010_010", 0, Expect::Out(None)),
        ("wsj_0529_009", 0, Expect::Out(None)),
        ("wsj_0529_009", 1, candidate_s(true)),
        (
            "wsj_0360_036",
            0,
            candidate_kind(MatrixKind::CopulaWithPredicate),
        ),
        ("wsj_0336_019", 0, candidate_s(false)),
        (
            "wsj_0772_006",
            0,
            candidate_kind(MatrixKind::CopulaWithPredicate),
        ),
        (
            "wsj_0562_015",
            0,
            candidate_kind(MatrixKind::CopulaWithPredicate),
        ),
        ("wsj_0239_009", 0, candidate_kind(MatrixKind::GeneralVerb)),
        (
            "wsj_0044_014",
            0,
            candidate_kind(MatrixKind::CopulaWithPredicate),
        ),
        ("wsj_0114_007", 0, candidate_kind(MatrixKind::ObjectOfVerb)),
        (
            "wsj_1286_054",
            0,
            candidate_kind(MatrixKind::ObjectOfPreposition),
        ),
        ("wsj_0296_029", 0, Expect::Cleft(AwkwardRelative)),
        ("wsj_0267_030", 0, Expect::Cleft(PpWithFullClause)),
        ("wsj_0121_048", 0, Expect::Cleft(BareCommonNoun)),
        (
            "wsj_0062_012",
            0,
            Expect::Out(Some(FilterReason::NpPredicateWithRelative)),
        ),
        ("wsj_0062_012v", 0, Expect::Cleft(GroundedOrModifiedNp)),
        ("wsj_0296_037", 0, Expect::Cleft(WhAdverbPrecedesIt)),
        (
            "wsj_0013_017",
            0,
            Expect::Out(Some(FilterReason::ModalWithIfOrWh)),
        ),
        ("wsj_0089_017", 0, candidate_s(false)),
        (
            "wsj_0044_010",
            0,
            candidate_kind(MatrixKind::CopulaWithPredicate),
        ),
        ("wsj_0231_015", 0, candidate_s(false)),
        ("wsj_0331_033", 0, candidate()),
        (
            "wsj_0074_005",
            0,
            Expect::Out(Some(FilterReason::PerfectTense)),
        ),
    ]
}

pub fn load(file: &str) -> (DepTree, Vec<ItInstance>) {
    let path = format!(
        "{}/tests/data/pinned/{file}.mrg",
        env!("CARGO_MANIFEST_DIR")
    );
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let trees = parse_bracketed(&text).unwrap_or_else(|e| panic!("{file}: {e}"));
    assert_eq!(trees.len(), 1, "{file}: expected one tree");
    let dep = to_dependency(&trees[0], &HeadTable::default());
    let instances = find_it_instances(&dep, file);
    (dep, instances)
}

pub fn verdicts_for(dep: &DepTree, inst: &ItInstance, cfg: &FilterConfig) -> Vec<SyntacticVerdict> {
    match generate_readings(inst, dep) {
        Ok(readings) => readings
            .iter()
            .map(|r| evaluate_reading(r, dep, cfg))
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// Check one pinned case, returning an error string instead of panicking.
pub fn check(file: &str, instance_no: usize, expect: Expect) -> Result<(), String> {
    let cfg = FilterConfig::default();
    let (dep, instances) = load(file);
    let inst = instances
        .get(instance_no)
        .ok_or_else(|| format!("{file}: no instance #{instance_no}"))?;
    let verdicts = verdicts_for(&dep, inst, &cfg);
    let weather = verdicts
        .iter()
        .any(|v| matches!(v, SyntacticVerdict::WeatherTime));
    let cleft = verdicts.iter().find_map(|v| match v {
        SyntacticVerdict::Cleft(cue) => Some(*cue),
        _ => None,
    });
    let cand = verdicts.iter().find_map(|v| match v {
        SyntacticVerdict::ExtrapositionCandidate(c) => Some(c.clone()),
        _ => None,
    });
    let fail = |msg: String| Err(format!("{file}#{instance_no}: {msg} (got {verdicts:?})"));
    match expect {
        Expect::WeatherTime if weather => Ok(()),
        Expect::WeatherTime => fail("expected weather/time".into()),
        Expect::Cleft(cue) => {
            if weather {
                return fail("weather preempted cleft".into());
            }
            if cleft == Some(cue) {
                Ok(())
            } else {
                fail(format!("expected cleft cue {cue:?}"))
            }
        }
        Expect::Candidate { s_flag, kind } => {
            if weather || cleft.is_some() {
                return fail("candidate preempted".into());
            }
            let Some(c) = cand else {
                return fail("expected a candidate".into());
            };
            if let Some(s) = s_flag {
                if c.s_flag != s {
                    return fail(format!("s_flag = {}", c.s_flag));
                }
            }
            if let Some(k) = kind {
                if c.matrix_kind != k {
                    return fail(format!("matrix kind {:?}", c.matrix_kind));
                }
            }
            Ok(())
        }
        Expect::Out(reason) => {
            if weather || cleft.is_some() || cand.is_some() {
                return fail("expected no verdict".into());
            }
            if let Some(want) = reason {
                if !verdicts
                    .iter()
                    .any(|v| matches!(v, SyntacticVerdict::None(r) if *r == want))
                {
                    return fail(format!("expected rejection {want:?}"));
                }
            }
            Ok(())
        }
    }
}
