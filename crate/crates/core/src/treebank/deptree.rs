//! Dependency trees derived from constituency parses by head percolation:
//! each phrase's head child is chosen by the [`HeadTable`], and every
//! non-head constituent attaches its lexical head to the phrase's lexical
//! head.

use super::headrules::HeadTable;
use super::ParseTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepNode {
    pub token: String,
    pub pos: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepTree {
    nodes: Vec<DepNode>,
    heads: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl DepTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &DepNode {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[DepNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn head_of(&self, i: usize) -> Option<usize> {
        self.heads[i]
    }

    /// Direct dependents of `i` in token order.
    pub fn dependents(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn token(&self, i: usize) -> &str {
        &self.nodes[i].token
    }

    pub fn pos(&self, i: usize) -> &str {
        &self.nodes[i].pos
    }

    pub fn token_lower(&self, i: usize) -> String {
        self.nodes[i].token.to_lowercase()
    }

    /// All nodes in the subtree rooted at `i`, including `i`.
    pub fn subtree(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut stack = vec![i];
        while let Some(n) = stack.pop() {
            for &c in &self.children[n] {
                out.push(c);
                stack.push(c);
            }
        }
        out.sort_unstable();
        out
    }

    /// Leftmost token index of the subtree rooted at `i`.
    pub fn subtree_start(&self, i: usize) -> usize {
        self.subtree(i)[0]
    }

    /// Walks `i`'s head chain upward (excluding `i` itself).
    pub fn ancestors(&self, i: usize) -> Ancestors<'_> {
        Ancestors { tree: self, at: i }
    }
}

pub struct Ancestors<'a> {
    tree: &'a DepTree,
    at: usize,
}

impl Iterator for Ancestors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let up = self.tree.heads[self.at]?;
        self.at = up;
        Some(up)
    }
}

/// Convert a constituency tree to its dependency form.
///
/// Total for every well-formed tree: the head table's DEFAULT rule
/// guarantees a head for every phrase, so the result always has exactly one
/// root and one node per leaf token.
pub fn to_dependency(tree: &ParseTree, table: &HeadTable) -> DepTree {
    let leaves = tree.leaves();
    let nodes: Vec<DepNode> = leaves
        .iter()
        .enumerate()
        .map(|(i, l)| DepNode {
            token: l.token.clone().unwrap_or_default(),
            pos: l.label.clone(),
            index: i,
        })
        .collect();
    let mut heads: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut next_leaf = 0usize;
    let root = attach(tree, table, &mut heads, &mut next_leaf);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (i, h) in heads.iter().enumerate() {
        if let Some(h) = h {
            children[*h].push(i);
        }
    }
    DepTree {
        nodes,
        heads,
        children,
        root,
    }
}

/// Returns the lexical head (leaf index) of `t`, wiring non-head children
/// onto it as a side effect.
fn attach(
    t: &ParseTree,
    table: &HeadTable,
    heads: &mut [Option<usize>],
    next_leaf: &mut usize,
) -> usize {
    if t.is_leaf() {
        let i = *next_leaf;
        *next_leaf += 1;
        return i;
    }
    let child_labels: Vec<&str> = t.children.iter().map(|c| c.label.as_str()).collect();
    let head_idx = table.head_child(&t.label, &child_labels);
    let mut lex_heads = Vec::with_capacity(t.children.len());
    for c in &t.children {
        lex_heads.push(attach(c, table, heads, next_leaf));
    }
    let lexical_head = lex_heads[head_idx];
    for (i, &lh) in lex_heads.iter().enumerate() {
        if i != head_idx {
            heads[lh] = Some(lexical_head);
        }
    }
    lexical_head
}
