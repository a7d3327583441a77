use std::fmt;

use crate::perm::Letter;

/// Balanced-parentheses encoding of an unlabeled ordered tree shape with `n`
/// non-root vertices; `true` is `(`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeCode(Vec<bool>);

impl ShapeCode {
    /// Accepts only balanced words.
    pub fn new(code: Vec<bool>) -> Option<Self> {
        let mut depth = 0i64;
        for &open in &code {
            depth += if open { 1 } else { -1 };
            if depth < 0 {
                return None;
            }
        }
        (depth == 0 && !code.is_empty()).then_some(Self(code))
    }

    pub fn order(&self) -> usize {
        self.0.len() / 2
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// `((( ... )))`, the lexicographically first shape (`(` < `)`).
    pub fn path(order: usize) -> Self {
        Self(std::iter::repeat_n(true, order).chain(std::iter::repeat_n(false, order)).collect())
    }

    /// Lexicographic successor, or `None` for the last shape `()()...()`.
    pub fn successor(&self) -> Option<Self> {
        let code = &self.0;
        let mut opens_before = code.iter().filter(|&&b| b).count();
        let mut depth_before = 0i64;
        let mut depth_at = vec![0i64; code.len()];
        for (i, &b) in code.iter().enumerate() {
            depth_at[i] = depth_before;
            depth_before += if b { 1 } else { -1 };
        }
        for i in (0..code.len()).rev() {
            if code[i] {
                opens_before -= 1;
                if depth_at[i] >= 1 {
                    let order = self.order();
                    let mut next = code[..i].to_vec();
                    next.push(false);
                    let remaining_open = order - opens_before;
                    next.extend(std::iter::repeat_n(true, remaining_open));
                    next.resize(code.len(), false);
                    return Some(Self(next));
                }
            }
        }
        None
    }

    /// Per-position preorder vertex index and per-vertex parent index.
    pub fn template(&self) -> ShapeTemplate {
        let n = self.order();
        let mut vertex_at = Vec::with_capacity(2 * n);
        let mut parent = Vec::with_capacity(n);
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        for &open in &self.0 {
            if open {
                let v = parent.len();
                parent.push(stack.last().copied());
                stack.push(v);
                vertex_at.push(v);
            } else {
                vertex_at.push(stack.pop().expect("balanced"));
            }
        }
        ShapeTemplate { vertex_at, parent }
    }

    /// Number of vertices without children.
    pub fn leaves(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] && !w[1]).count()
    }
}

impl fmt::Display for ShapeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "(" } else { ")" })?;
        }
        Ok(())
    }
}

/// Stream of all shapes of a given order in lexicographic order.
#[derive(Debug, Clone)]
pub struct Shapes {
    next: Option<ShapeCode>,
}

pub fn gen_shapes(order: usize) -> Shapes {
    Shapes { next: (order >= 1).then(|| ShapeCode::path(order)) }
}

impl Iterator for Shapes {
    type Item = ShapeCode;

    fn next(&mut self) -> Option<ShapeCode> {
        let current = self.next.take()?;
        self.next = current.successor();
        Some(current)
    }
}

/// A shape unpacked for fast labeling. Vertices are numbered in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeTemplate {
    vertex_at: Vec<usize>,
    parent: Vec<Option<usize>>,
}

impl ShapeTemplate {
    pub fn order(&self) -> usize {
        self.parent.len()
    }

    /// Writes the walk word of the tree whose `i`-th preorder vertex carries
    /// `labels[i]`.
    pub fn fill(&self, labels: &[Letter], out: &mut [Letter]) {
        for (slot, &v) in out.iter_mut().zip(&self.vertex_at) {
            *slot = labels[v];
        }
    }

    pub fn word(&self, labels: &[Letter]) -> Vec<Letter> {
        let mut out = vec![0; self.vertex_at.len()];
        self.fill(labels, &mut out);
        out
    }

    /// Child lists indexed by label, slot 0 for the root.
    pub fn children(&self, labels: &[Letter]) -> Vec<Vec<Letter>> {
        let mut children = vec![Vec::new(); self.order() + 1];
        for (v, p) in self.parent.iter().enumerate() {
            let slot = p.map_or(0, |p| labels[p] as usize);
            children[slot].push(labels[v]);
        }
        children
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Catalan numbers from the ballot recurrence, independent of the
    /// formulas module.
    fn catalan_small(n: usize) -> usize {
        let mut c = vec![1usize; n + 1];
        for m in 1..=n {
            c[m] = (0..m).map(|i| c[i] * c[m - 1 - i]).sum();
        }
        c[n]
    }

    #[test]
    fn counts_follow_catalan() {
        assert_eq!(gen_shapes(1).count(), 1);
        assert_eq!(gen_shapes(3).count(), 5);
        assert_eq!(gen_shapes(6).count(), 132);
        for n in 1..=9 {
            assert_eq!(gen_shapes(n).count(), catalan_small(n));
        }
        assert_eq!(gen_shapes(0).count(), 0);
    }

    #[test]
    fn lexicographic_and_distinct() {
        let all: Vec<String> = gen_shapes(6).map(|s| s.to_string()).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let order3: Vec<String> = gen_shapes(3).map(|s| s.to_string()).collect();
        assert_eq!(order3, ["((()))", "(()())", "(())()", "()(())", "()()()"]);
    }

    #[test]
    fn template_layout() {
        let shape = ShapeCode::new(vec![true, true, false, true, false, false, true, false]).unwrap();
        let t = shape.template();
        assert_eq!(t.word(&[3, 2, 4, 1]), vec![3, 2, 2, 4, 4, 3, 1, 1]);
        assert_eq!(t.children(&[3, 2, 4, 1]), vec![vec![3, 1], vec![], vec![], vec![2, 4], vec![]]);
        assert_eq!(shape.leaves(), 3);
        assert!(ShapeCode::new(vec![false, true]).is_none());
        assert!(ShapeCode::new(vec![true]).is_none());
    }
}
