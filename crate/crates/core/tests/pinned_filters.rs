//! The pinned syntactic-filter suite: every example sentence in
//! `tests/data/pinned/` must receive exactly the verdict assigned to it
//! (extraposition candidate / cleft with the stated cue / weather-time /
//! filtered out), using hand-built gold parses and default filter flags.

mod support;

use pleonit::filters::{evaluate_reading, FilterConfig, FilterFlags, SyntacticVerdict};
use pleonit::treebank::{
    find_it_instances, generate_readings, parse_bracketed, to_dependency, GrammaticalRole,
    HeadTable,
};
use support::pinned;

#[test]
fn pinned_suite() {
    let cases = pinned::cases();
    assert!(cases.len() >= 20);
    let mut failures = Vec::new();
    for (file, instance, expect) in cases {
        if let Err(msg) = pinned::check(file, instance, expect) {
            failures.push(msg);
        }
    }
    assert!(
        failures.is_empty(),
        "pinned failures:\n{}",
        failures.join("\n")
    );
}

#[test]
fn role_assignments_match() {
    let (_, inst) = pinned::load("wsj_0006_002");
    assert_eq!(inst[0].role, GrammaticalRole::Subject);
    let (_, inst) = pinned::load("wsj_1286_054");
    assert_eq!(inst[0].role, GrammaticalRole::PrepositionObject);
    let (_, inst) = pinned::load("wsj_0114_007");
    assert_eq!(inst[0].role, GrammaticalRole::VerbObject);
    let (_, inst) = pinned::load("wsj_0529_009");
    assert_eq!(inst.len(), 2);
    assert_eq!(inst[0].role, GrammaticalRole::VerbObject);
    assert_eq!(inst[1].role, GrammaticalRole::Subject);
}

#[test]
fn both_case_study_readings_are_candidates() {
    let cfg = FilterConfig::default();
    let (dep, instances) = pinned::load("wsj_0331_033");
    let verdicts = pinned::verdicts_for(&dep, &instances[0], &cfg);
    assert_eq!(verdicts.len(), 2);
    let flags: Vec<bool> = verdicts
        .iter()
        .map(|v| match v {
            SyntacticVerdict::ExtrapositionCandidate(c) => c.s_flag,
            other => panic!("expected candidates, got {other:?}"),
        })
        .collect();
    // Reading A bears `it verb infinitive`; reading B is a copula frame.
    assert_eq!(flags, vec![true, false]);
}

#[test]
fn optional_filters_can_be_switched_off() {
    let cfg = FilterConfig {
        flags: FilterFlags::none(),
        ..FilterConfig::default()
    };
    // With the optional filters off, the modal and perfect sentences become
    // query candidates; the mandatory punctuation rule still applies.
    for file in ["wsj_0013_017", "wsj_0074_005"] {
        let (dep, instances) = pinned::load(file);
        let verdicts = pinned::verdicts_for(&dep, &instances[0], &cfg);
        assert!(
            verdicts
                .iter()
                .any(|v| matches!(v, SyntacticVerdict::ExtrapositionCandidate(_))),
            "{file}: {verdicts:?}"
        );
    }
}

#[test]
fn mutual_priority_one_verdict_kind_per_reading() {
    // Sanity over the whole pinned corpus: cleft cues never fire without a
    // copula matrix verb.
    let cfg = FilterConfig::default();
    let dir = format!("{}/tests/data/pinned", env!("CARGO_MANIFEST_DIR"));
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let tree = &parse_bracketed(&text).unwrap()[0];
        let dep = to_dependency(tree, &HeadTable::default());
        for inst in find_it_instances(&dep, "x") {
            let Ok(readings) = generate_readings(&inst, &dep) else {
                continue;
            };
            for reading in &readings {
                if let SyntacticVerdict::Cleft(_) = evaluate_reading(reading, &dep, &cfg) {
                    assert!(
                        reading.matrix_is_copula(&dep),
                        "{path:?}: cleft with non-copula matrix"
                    );
                }
            }
        }
    }
}
