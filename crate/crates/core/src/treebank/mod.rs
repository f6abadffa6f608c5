//! Constituency-parse ingestion and conversion to dependency trees.
//!
//! Input is Penn-Treebank bracketed notation, either pretty-printed `.mrg`
//! style (one tree over several lines, with an optional extra outer pair of
//! parentheses) or one tree per line as emitted by most constituency parsers.
//! Function tags (`NP-SBJ` → `NP`) and trace/empty elements (`-NONE-`
//! subtrees) are stripped at parse time so gold trees and parser output flow
//! through one code path.

mod deptree;
mod headrules;
mod readings;

pub use deptree::{to_dependency, DepNode, DepTree};
pub use headrules::HeadTable;
pub use readings::{
    aux_complement, clause_shape, find_it_instances, generate_readings, is_be_form, is_finite_pos,
    is_locative_time_adverb, is_verb_pos, Clause, ClauseShape, Comp, Frame, GrammaticalRole,
    ItInstance, MatrixVerb, Reading, ReadingError,
};

use thiserror::Error;

/// A node of a constituency parse: internal nodes carry a phrase label and
/// children, leaves carry a POS label and the surface token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    pub label: String,
    pub token: Option<String>,
    pub children: Vec<ParseTree>,
    /// Token span as (start, end) with `end` exclusive.
    pub span: (usize, usize),
}

impl ParseTree {
    pub fn is_leaf(&self) -> bool {
        self.token.is_some()
    }

    pub fn leaves(&self) -> Vec<&ParseTree> {
        let mut out = Vec::new();
        collect_leaves(self, &mut out);
        out
    }

    /// Surface tokens in order.
    pub fn tokens(&self) -> Vec<String> {
        self.leaves()
            .iter()
            .map(|l| l.token.clone().unwrap_or_default())
            .collect()
    }
}

fn collect_leaves<'a>(t: &'a ParseTree, out: &mut Vec<&'a ParseTree>) {
    if t.is_leaf() {
        out.push(t);
    } else {
        for c in &t.children {
            collect_leaves(c, out);
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreebankError {
    #[error("unbalanced brackets at byte {0}")]
    UnbalancedBrackets(usize),
    #[error("input contains no sentence")]
    EmptySentence,
    #[error("malformed node at byte {0}")]
    MalformedNode(usize),
}

/// Parse bracketed text into one `ParseTree` per top-level sentence.
///
/// The extra `( ... )` wrapper used by treebank `.mrg` files is unwrapped,
/// function tags and coindexation suffixes are dropped from labels, and
/// `-NONE-` trace subtrees are deleted together with any internal node left
/// childless by the deletion.
pub fn parse_bracketed(text: &str) -> Result<Vec<ParseTree>, TreebankError> {
    let mut trees = Vec::new();
    let mut lexer = Lexer::new(text);
    while let Some(tok) = lexer.peek()? {
        match tok {
            Token::Open(_) => {
                let raw = parse_node(&mut lexer)?;
                for unwrapped in unwrap_top(raw) {
                    match prune_traces(unwrapped) {
                        Some(mut t) => {
                            let mut next = 0;
                            assign_spans(&mut t, &mut next);
                            trees.push(t);
                        }
                        None => return Err(TreebankError::EmptySentence),
                    }
                }
            }
            Token::Close(pos) => return Err(TreebankError::UnbalancedBrackets(pos)),
            Token::Atom(pos, _) => return Err(TreebankError::MalformedNode(pos)),
        }
    }
    if trees.is_empty() {
        return Err(TreebankError::EmptySentence);
    }
    Ok(trees)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open(usize),
    Close(usize),
    Atom(usize, String),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    lookahead: Option<Token>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            lookahead: None,
        }
    }

    fn peek(&mut self) -> Result<Option<Token>, TreebankError> {
        if self.lookahead.is_none() {
            self.lookahead = self.scan();
        }
        Ok(self.lookahead.clone())
    }

    fn next(&mut self) -> Option<Token> {
        if let Some(t) = self.lookahead.take() {
            return Some(t);
        }
        self.scan()
    }

    fn scan(&mut self) -> Option<Token> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return None;
        }
        let start = self.pos;
        match self.src[self.pos] {
            b'(' => {
                self.pos += 1;
                Some(Token::Open(start))
            }
            b')' => {
                self.pos += 1;
                Some(Token::Close(start))
            }
            _ => {
                while self.pos < self.src.len()
                    && !self.src[self.pos].is_ascii_whitespace()
                    && self.src[self.pos] != b'('
                    && self.src[self.pos] != b')'
                {
                    self.pos += 1;
                }
                let atom = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Some(Token::Atom(start, atom))
            }
        }
    }
}

/// Raw recursive-descent parse of one `( ... )` group.
fn parse_node(lexer: &mut Lexer) -> Result<ParseTree, TreebankError> {
    let open = lexer.next();
    let open_pos = match open {
        Some(Token::Open(p)) => p,
        Some(Token::Close(p)) | Some(Token::Atom(p, _)) => {
            return Err(TreebankError::MalformedNode(p))
        }
        None => return Err(TreebankError::EmptySentence),
    };
    let label = match lexer.peek()? {
        Some(Token::Atom(_, a)) => {
            lexer.next();
            strip_label(&a)
        }
        _ => String::new(),
    };
    let mut children = Vec::new();
    let mut token: Option<String> = None;
    loop {
        match lexer.peek()? {
            Some(Token::Open(_)) => children.push(parse_node(lexer)?),
            Some(Token::Atom(_, a)) => {
                lexer.next();
                // An atom in child position is the surface token of a leaf.
                token = Some(match token {
                    None => a,
                    Some(prev) => format!("{prev} {a}"),
                });
            }
            Some(Token::Close(_)) => {
                lexer.next();
                break;
            }
            None => return Err(TreebankError::UnbalancedBrackets(open_pos)),
        }
    }
    Ok(ParseTree {
        label,
        token,
        children,
        span: (0, 0),
    })
}

/// Drop function tags (`NP-SBJ-1` → `NP`) and coindexation (`NP=2` → `NP`).
/// Labels that begin with `-` (`-NONE-`, `-LRB-`, `-RRB-`) are kept whole.
fn strip_label(raw: &str) -> String {
    if raw.starts_with('-') {
        return raw.to_string();
    }
    let cut = raw.find(['-', '=']).unwrap_or(raw.len());
    raw[..cut].to_string()
}

/// Unwrap the conventional empty-labelled outer node of `.mrg` files.
fn unwrap_top(t: ParseTree) -> Vec<ParseTree> {
    if t.label.is_empty() && t.token.is_none() && !t.children.is_empty() {
        t.children
    } else {
        vec![t]
    }
}

/// Delete `-NONE-` leaves and any internal node left without children.
fn prune_traces(t: ParseTree) -> Option<ParseTree> {
    if t.is_leaf() {
        if t.label == "-NONE-" {
            return None;
        }
        return Some(t);
    }
    let children: Vec<ParseTree> = t.children.into_iter().filter_map(prune_traces).collect();
    if children.is_empty() {
        return None;
    }
    Some(ParseTree {
        label: t.label,
        token: None,
        children,
        span: (0, 0),
    })
}

fn assign_spans(t: &mut ParseTree, next: &mut usize) {
    if t.is_leaf() {
        t.span = (*next, *next + 1);
        *next += 1;
        return;
    }
    let start = *next;
    for c in &mut t.children {
        assign_spans(c, next);
    }
    t.span = (start, *next);
}

/// POS tags that mark punctuation tokens.
pub fn is_punct_pos(pos: &str) -> bool {
    matches!(
        pos,
        "." | "," | ":" | "``" | "''" | "-LRB-" | "-RRB-" | "HYPH"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_sentence() {
        let trees = parse_bracketed("(S (NP (PRP It)) (VP (VBZ is) (ADJP (JJ easy))))").unwrap();
        assert_eq!(trees.len(), 1);
        let t = &trees[0];
        assert_eq!(t.label, "S");
        assert_eq!(t.leaves().len(), 3);
        assert_eq!(t.tokens(), vec!["It", "is", "easy"]);
        assert_eq!(t.span, (0, 3));
    }

    #[test]
    fn function_tags_are_stripped() {
        let trees =
            parse_bracketed("(S (NP-SBJ-1 (PRP It)) (VP (VBZ is) (ADJP-PRD (JJ easy))))").unwrap();
        assert_eq!(trees[0].children[0].label, "NP");
        assert_eq!(trees[0].children[1].children[1].label, "ADJP");
    }

    #[test]
    fn unbalanced_input_is_rejected() {
        assert!(matches!(
            parse_bracketed("(S (NP"),
            Err(TreebankError::UnbalancedBrackets(_))
        ));
        assert!(matches!(
            parse_bracketed("(S (NP (PRP It))))"),
            Err(TreebankError::UnbalancedBrackets(_))
        ));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(parse_bracketed("  \n"), Err(TreebankError::EmptySentence));
    }

    #[test]
    fn traces_are_pruned_with_their_parents() {
        let text = "( (S (NP-SBJ (PRP It)) (VP (VBZ is) (ADJP (JJ easy) \
                    (S (NP-SBJ (-NONE- *)) (VP (TO to) (VP (VB see))))))))";
        let trees = parse_bracketed(text).unwrap();
        assert_eq!(trees[0].tokens(), vec!["It", "is", "easy", "to", "see"]);
        // No node anywhere should be labelled -NONE- or be an empty shell.
        fn check(t: &ParseTree) {
            assert_ne!(t.label, "-NONE-");
            assert!(t.is_leaf() || !t.children.is_empty());
            for c in &t.children {
                check(c);
            }
        }
        check(&trees[0]);
    }

    #[test]
    fn mrg_wrapper_and_multiple_sentences() {
        let text = "( (S (NP (PRP It)) (VP (VBZ works))))\n( (S (NP (PRP He)) (VP (VBD left))))";
        let trees = parse_bracketed(text).unwrap();
        assert_eq!(trees.len(), 2);
        assert_eq!(trees[0].tokens(), vec!["It", "works"]);
        assert_eq!(trees[1].tokens(), vec!["He", "left"]);
    }

    #[test]
    fn spans_partition_parents() {
        let trees =
            parse_bracketed("(S (NP (DT The) (NN dog)) (VP (VBZ sees) (NP (PRP it))) (. .))")
                .unwrap();
        fn check(t: &ParseTree) {
            if !t.is_leaf() {
                let mut cursor = t.span.0;
                for c in &t.children {
                    assert_eq!(c.span.0, cursor);
                    cursor = c.span.1;
                    check(c);
                }
                assert_eq!(cursor, t.span.1);
            }
        }
        check(&trees[0]);
    }
}
