//! Structural properties of parsing and dependency conversion over
//! randomized trees: conversion is total, produces exactly one root and an
//! acyclic head graph, and conserves the token/POS sequence.

use pleonit::treebank::{parse_bracketed, to_dependency, HeadTable, ParseTree};
use proptest::prelude::*;

const PHRASES: &[&str] = &[
    "S", "NP", "VP", "PP", "ADJP", "ADVP", "SBAR", "WHNP", "QP", "XX",
];
const POS: &[&str] = &[
    "DT", "NN", "NNS", "VBZ", "VBD", "JJ", "IN", "PRP", "RB", "TO", "CC",
];
const WORDS: &[&str] = &[
    "the", "dog", "plans", "sees", "saw", "big", "in", "it", "fast", "to", "and", "O'Hara",
];

fn leaf_strategy() -> impl Strategy<Value = ParseTree> {
    (0..POS.len(), 0..WORDS.len()).prop_map(|(p, w)| ParseTree {
        label: POS[p].to_string(),
        token: Some(WORDS[w].to_string()),
        children: Vec::new(),
        span: (0, 0),
    })
}

fn tree_strategy() -> impl Strategy<Value = ParseTree> {
    leaf_strategy().prop_recursive(4, 40, 4, |inner| {
        (0..PHRASES.len(), proptest::collection::vec(inner, 1..4)).prop_map(|(label, children)| {
            ParseTree {
                label: PHRASES[label].to_string(),
                token: None,
                children,
                span: (0, 0),
            }
        })
    })
}

fn render(t: &ParseTree, out: &mut String) {
    out.push('(');
    out.push_str(&t.label);
    match &t.token {
        Some(tok) => {
            out.push(' ');
            out.push_str(tok);
        }
        None => {
            for c in &t.children {
                out.push(' ');
                render(c, out);
            }
        }
    }
    out.push(')');
}

proptest! {
    #[test]
    fn conversion_is_total_and_conserves_tokens(tree in tree_strategy()) {
        let mut text = String::new();
        render(&tree, &mut text);
        let parsed = parse_bracketed(&text).unwrap();
        prop_assert_eq!(parsed.len(), 1);
        let tree = &parsed[0];

        let dep = to_dependency(tree, &HeadTable::default());
        prop_assert_eq!(dep.len(), tree.leaves().len());
        let leaf_pairs: Vec<(String, String)> = tree
            .leaves()
            .iter()
            .map(|l| (l.token.clone().unwrap(), l.label.clone()))
            .collect();
        let node_pairs: Vec<(String, String)> = dep
            .nodes()
            .iter()
            .map(|n| (n.token.clone(), n.pos.clone()))
            .collect();
        prop_assert_eq!(leaf_pairs, node_pairs);

        let roots = (0..dep.len()).filter(|&i| dep.head_of(i).is_none()).count();
        prop_assert_eq!(roots, 1);
        for i in 0..dep.len() {
            let mut steps = 0;
            let mut at = i;
            while let Some(h) = dep.head_of(at) {
                at = h;
                steps += 1;
                prop_assert!(steps <= dep.len(), "cycle above node {}", i);
            }
            prop_assert_eq!(at, dep.root());
        }
    }

    #[test]
    fn reparsing_the_rendering_is_identity(tree in tree_strategy()) {
        let mut once = String::new();
        render(&tree, &mut once);
        let reparsed = &parse_bracketed(&once).unwrap()[0];
        let mut twice = String::new();
        render(reparsed, &mut twice);
        prop_assert_eq!(once, twice);
    }
}
