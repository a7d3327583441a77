//! Ordered rooted labeled trees and the depth-first-walk bijection with
//! quasi-Stirling permutations.
//!
//! A tree has an unlabeled root and `n` further vertices labeled `1..=n`.
//! Children are ordered. Walking the tree counterclockwise and writing down
//! the label below every edge crossed (once going down, once coming back up)
//! gives a word in which every label occurs twice. The inverse reads the word
//! as a bracket sequence: the first copy of a label opens it, the second
//! copy closes it, and the word is quasi-Stirling exactly when the brackets
//! nest.
//!
//! Text form: `forest := subtree*`, `subtree := "(" label subtree* ")"`, with
//! the root implicit, e.g. `(3 (2) (6) (4)) (5 (1))`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{Letter, MultisetPerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("not quasi-Stirling: value {value} at position {position} closes across an open value")]
    NotQuasiStirling { value: Letter, position: usize },
    #[error("empty tree")]
    Empty,
    #[error("duplicate label {0}")]
    DuplicateLabel(usize),
    #[error("label {label} outside 1..={order}")]
    LabelOutOfRange { label: usize, order: usize },
    #[error("vertices not reachable from the root")]
    Disconnected,
    #[error("malformed tree text at byte {offset}: {reason}")]
    Syntax { offset: usize, reason: &'static str },
}

/// A plane tree whose non-root vertices carry the labels `1..=n`.
///
/// Stored as child lists indexed by label, slot 0 holding the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedTree {
    children: Vec<Vec<Letter>>,
}

impl OrderedTree {
    /// Builds a tree from per-vertex child lists (`children[0]` is the root).
    pub fn from_children(children: Vec<Vec<Letter>>) -> Result<Self, TreeError> {
        let order = children.len().checked_sub(1).ok_or(TreeError::Empty)?;
        if order == 0 {
            return Err(TreeError::Empty);
        }
        if order > Letter::MAX as usize {
            return Err(TreeError::LabelOutOfRange { label: order, order: Letter::MAX as usize });
        }
        let mut seen = vec![false; order + 1];
        for &c in children.iter().flatten() {
            let c = c as usize;
            if c == 0 || c > order {
                return Err(TreeError::LabelOutOfRange { label: c, order });
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(TreeError::DuplicateLabel(c));
            }
        }
        let tree = Self { children };
        if tree.preorder().len() != order {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    pub(crate) fn from_trusted(children: Vec<Vec<Letter>>) -> Self {
        Self { children }
    }

    pub fn order(&self) -> usize {
        self.children.len() - 1
    }

    /// Children of the root, left to right.
    pub fn root_children(&self) -> &[Letter] {
        &self.children[0]
    }

    pub fn children(&self, label: Letter) -> &[Letter] {
        &self.children[label as usize]
    }

    /// Labels in preorder (root excluded).
    pub fn preorder(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.order());
        let mut stack: Vec<Letter> = self.children[0].iter().rev().copied().collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            if out.len() > self.order() {
                break;
            }
            stack.extend(self.children[v as usize].iter().rev());
        }
        out
    }

    pub fn leaves(&self) -> usize {
        self.children[1..].iter().filter(|c| c.is_empty()).count()
    }

    /// Every child label exceeds its parent's.
    pub fn is_increasing(&self) -> bool {
        self.children[1..]
            .iter()
            .enumerate()
            .all(|(i, kids)| kids.iter().all(|&c| c as usize > i + 1))
    }

    /// The depth-first walk word.
    pub fn phi(&self) -> MultisetPerm {
        MultisetPerm::from_trusted(self.walk())
    }

    pub(crate) fn walk(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * self.order());
        let mut stack: Vec<(Letter, usize)> = vec![(0, 0)];
        while let Some(top) = stack.last_mut() {
            let (node, next) = *top;
            match self.children[node as usize].get(next) {
                Some(&child) => {
                    top.1 += 1;
                    out.push(child);
                    stack.push((child, 0));
                }
                None => {
                    stack.pop();
                    if node != 0 {
                        out.push(node);
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`OrderedTree::phi`]; fails on words that are not
    /// quasi-Stirling.
    pub fn phi_inverse(perm: &MultisetPerm) -> Result<Self, TreeError> {
        let word = perm.word();
        let mut children = vec![Vec::new(); perm.order() + 1];
        scan_brackets(word, |event| {
            if let Bracket::Open { value, parent } = event {
                children[parent as usize].push(value);
            }
        })?;
        Ok(Self { children })
    }
}

enum Bracket {
    Open { value: Letter, parent: Letter },
    Close { value: Letter, position: usize, depth: usize },
}

/// Left-to-right scan treating each value as a bracket pair.
fn scan_brackets(word: &[Letter], mut on: impl FnMut(Bracket)) -> Result<(), TreeError> {
    let mut open = vec![false; word.len() / 2 + 1];
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len() / 2);
    for (i, &v) in word.iter().enumerate() {
        if open[v as usize] {
            if stack.last() != Some(&v) {
                return Err(TreeError::NotQuasiStirling { value: v, position: i + 1 });
            }
            stack.pop();
            open[v as usize] = false;
            on(Bracket::Close { value: v, position: i, depth: stack.len() });
        } else {
            let parent = stack.last().copied().unwrap_or(0);
            open[v as usize] = true;
            stack.push(v);
            on(Bracket::Open { value: v, parent });
        }
    }
    Ok(())
}

/// A maximal top-level segment whose first and last values coincide.
/// Positions are 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub head: Letter,
    pub first: usize,
    pub last: usize,
}

impl Block {
    pub fn slice<'a>(&self, perm: &'a MultisetPerm) -> &'a [Letter] {
        &perm.word()[self.first - 1..self.last]
    }

    /// A block of length two is a leaf.
    pub fn is_leaf(&self) -> bool {
        self.last == self.first + 1
    }
}

/// Splits a quasi-Stirling word into its top-level blocks, validating the
/// nesting at every depth.
pub fn block_decompose(perm: &MultisetPerm) -> Result<Vec<Block>, TreeError> {
    let mut blocks = Vec::new();
    let mut start = 0;
    scan_brackets(perm.word(), |event| if let Bracket::Close { value, position, depth: 0 } = event {
        blocks.push(Block { head: value, first: start + 1, last: position + 1 });
        start = position + 1;
    })?;
    Ok(blocks)
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // (node, next child) frames; emits "(" label on entry and ")" on exit
        let mut stack: Vec<(Letter, usize)> = vec![(0, 0)];
        let mut first_top = true;
        while let Some(top) = stack.last_mut() {
            let (node, next) = *top;
            match self.children[node as usize].get(next) {
                Some(&child) => {
                    top.1 += 1;
                    if node == 0 {
                        if !first_top {
                            f.write_str(" ")?;
                        }
                        first_top = false;
                    } else {
                        f.write_str(" ")?;
                    }
                    write!(f, "({child}")?;
                    stack.push((child, 0));
                }
                None => {
                    stack.pop();
                    if node != 0 {
                        f.write_str(")")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for OrderedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        // parents[k] = label of the vertex currently open at depth k (0 = root)
        let mut open: Vec<usize> = vec![0];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut expect_label = false;
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b if b.is_ascii_whitespace() => i += 1,
                b'(' => {
                    if expect_label {
                        return Err(TreeError::Syntax { offset: i, reason: "expected label" });
                    }
                    expect_label = true;
                    i += 1;
                }
                b')' => {
                    if expect_label {
                        return Err(TreeError::Syntax { offset: i, reason: "expected label" });
                    }
                    if open.len() == 1 {
                        return Err(TreeError::Syntax { offset: i, reason: "unbalanced ')'" });
                    }
                    open.pop();
                    i += 1;
                }
                b'0'..=b'9' => {
                    if !expect_label {
                        return Err(TreeError::Syntax { offset: i, reason: "label outside parentheses" });
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let label: usize = s[start..i]
                        .parse()
                        .map_err(|_| TreeError::Syntax { offset: start, reason: "label too large" })?;
                    edges.push((*open.last().unwrap(), label));
                    open.push(label);
                    expect_label = false;
                }
                _ => return Err(TreeError::Syntax { offset: i, reason: "unexpected character" }),
            }
        }
        if expect_label {
            return Err(TreeError::Syntax { offset: bytes.len(), reason: "expected label" });
        }
        if open.len() != 1 {
            return Err(TreeError::Syntax { offset: bytes.len(), reason: "unclosed '('" });
        }
        let order = edges.len();
        if order == 0 {
            return Err(TreeError::Empty);
        }
        let mut seen = vec![false; order + 1];
        for &(_, label) in &edges {
            if label == 0 || label > order || label > Letter::MAX as usize {
                return Err(TreeError::LabelOutOfRange { label, order });
            }
            if std::mem::replace(&mut seen[label], true) {
                return Err(TreeError::DuplicateLabel(label));
            }
        }
        let mut children = vec![Vec::new(); order + 1];
        for (parent, label) in edges {
            children[parent].push(label as Letter);
        }
        Ok(Self { children })
    }
}
