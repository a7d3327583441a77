//! Classical pattern containment for words with repeated letters.
//!
//! Two sequences are in the same relative order when equal entries line up
//! with equal entries and strict inequalities line up with strict
//! inequalities. A pattern with a repeated letter (212, 1212) therefore
//! demands exact equality at those positions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{Letter, MultisetPerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("empty pattern")]
    Empty,
    #[error("pattern letters must cover 1..={k} without gaps; {missing} is missing")]
    Gap { k: usize, missing: usize },
    #[error("cannot parse pattern {0:?}")]
    Parse(String),
    #[error("empty pattern set")]
    EmptySet,
    #[error("sequences of different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// A word over `{1..k}` using every letter at least once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    letters: Vec<Letter>,
    k: usize,
}

impl Pattern {
    pub fn new(letters: Vec<Letter>) -> Result<Self, PatternError> {
        if letters.is_empty() {
            return Err(PatternError::Empty);
        }
        if letters.contains(&0) {
            return Err(PatternError::Parse("0".into()));
        }
        let k = *letters.iter().max().unwrap() as usize;
        let used: BTreeSet<Letter> = letters.iter().copied().collect();
        if let Some(missing) = (1..=k).find(|&v| !used.contains(&(v as Letter))) {
            return Err(PatternError::Gap { k, missing });
        }
        Ok(Self { letters, k })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of distinct letters.
    pub fn alphabet(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().copied().collect(), k: self.k }
    }

    pub fn complement(&self) -> Self {
        let top = self.k as Letter + 1;
        Self { letters: self.letters.iter().map(|&v| top - v).collect(), k: self.k }
    }

    /// Position of this pattern in [`S3`], if it is a permutation of length 3.
    pub fn s3_index(&self) -> Option<usize> {
        S3.iter().position(|p| p[..] == self.letters[..])
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 9 {
            for v in &self.letters {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            crate::perm::write_word(f, &self.letters)
        }
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PatternError::Parse(s.to_string());
        let letters = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| t.parse::<Letter>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as Letter).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?
        };
        Pattern::new(letters)
    }
}

/// The six permutations of length three, in lexicographic order.
pub const S3: [[Letter; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];

pub fn s3_pattern(index: usize) -> Pattern {
    Pattern { letters: S3[index].to_vec(), k: 3 }
}

/// A finite set of patterns; duplicates collapse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PatternSet(BTreeSet<Pattern>);

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Pattern>) -> Self {
        Self(patterns.into_iter().collect())
    }

    /// The subset of S3 selected by the bits of `mask`.
    pub fn from_s3_mask(mask: u8) -> Self {
        Self((0..6).filter(|i| mask & (1 << i) != 0).map(s3_pattern).collect())
    }

    /// Bitmask over [`S3`] if every member is a permutation of length 3.
    pub fn s3_mask(&self) -> Option<u8> {
        self.0.iter().try_fold(0u8, |m, p| p.s3_index().map(|i| m | (1 << i)))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pattern> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.iter().map(Pattern::reverse).collect())
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(Pattern::complement).collect())
    }

    /// Orbit under the group generated by reverse and complement.
    pub fn symmetry_closure(&self) -> BTreeSet<PatternSet> {
        let r = self.reverse();
        let rc = r.complement();
        [self.clone(), self.complement(), r, rc].into_iter().collect()
    }
}

impl FromIterator<Pattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Pattern>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for PatternSet {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(PatternSet::default());
        }
        s.split(',').map(str::parse).collect()
    }
}

/// True iff `a` and `b` are in the same relative order.
pub fn same_relative_order<T: Ord, U: Ord>(a: &[T], b: &[U]) -> Result<bool, PatternError> {
    if a.len() != b.len() {
        return Err(PatternError::LengthMismatch(a.len(), b.len()));
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i].cmp(&a[j]) != b[i].cmp(&b[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An occurrence of a pattern: 1-based positions and the values found there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub positions: Vec<usize>,
    pub values: Vec<Letter>,
}

/// Lexicographically least occurrence of `pattern` in `perm`, if any.
pub fn contains(perm: &MultisetPerm, pattern: &Pattern) -> Option<Occurrence> {
    let indices = find_in_word(perm.word(), pattern)?;
    Some(Occurrence {
        values: indices.iter().map(|&i| perm.word()[i]).collect(),
        positions: indices.into_iter().map(|i| i + 1).collect(),
    })
}

/// Backtracking search returning 0-based indices of the lexicographically
/// least occurrence. Letters already bound constrain later choices, so a
/// branch dies as soon as one relation breaks.
pub fn find_in_word(word: &[Letter], pattern: &Pattern) -> Option<Vec<usize>> {
    let m = pattern.len();
    if m > word.len() {
        return None;
    }
    let mut bound: Vec<Option<Letter>> = vec![None; pattern.k + 1];
    let mut chosen = Vec::with_capacity(m);
    if search(word, &pattern.letters, 0, &mut bound, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn search(
    word: &[Letter],
    pat: &[Letter],
    start: usize,
    bound: &mut [Option<Letter>],
    chosen: &mut Vec<usize>,
) -> bool {
    let depth = chosen.len();
    if depth == pat.len() {
        return true;
    }
    let letter = pat[depth] as usize;
    let last_start = word.len() - (pat.len() - depth);
    for i in start..=last_start {
        let v = word[i];
        let fresh = match bound[letter] {
            Some(b) if b != v => continue,
            Some(_) => false,
            None => {
                let consistent = bound.iter().enumerate().all(|(other, b)| match b {
                    Some(b) => *b != v && ((letter < other) == (v < *b)),
                    None => true,
                });
                if !consistent {
                    continue;
                }
                bound[letter] = Some(v);
                true
            }
        };
        chosen.push(i);
        if search(word, pat, i + 1, bound, chosen) {
            return true;
        }
        chosen.pop();
        if fresh {
            bound[letter] = None;
        }
    }
    false
}

pub fn avoids(perm: &MultisetPerm, pattern: &Pattern) -> bool {
    find_in_word(perm.word(), pattern).is_none()
}

/// True iff `perm` avoids every pattern in `set`. An empty set is an error.
pub fn avoids_all(perm: &MultisetPerm, set: &PatternSet) -> Result<bool, PatternError> {
    let filter = AvoidanceFilter::new(set)?;
    Ok(filter.accepts(perm.word()))
}

pub fn quasi_stirling_patterns() -> PatternSet {
    PatternSet::new([Pattern { letters: vec![1, 2, 1, 2], k: 2 }, Pattern { letters: vec![2, 1, 2, 1], k: 2 }])
}

pub fn stirling_patterns() -> PatternSet {
    PatternSet::new([Pattern { letters: vec![2, 1, 2], k: 2 }])
}

/// Avoids 1212 and 2121.
pub fn is_quasi_stirling(perm: &MultisetPerm) -> bool {
    let w = perm.word();
    find_in_word(w, &Pattern { letters: vec![1, 2, 1, 2], k: 2 }).is_none()
        && find_in_word(w, &Pattern { letters: vec![2, 1, 2, 1], k: 2 }).is_none()
}

/// Avoids 212.
pub fn is_stirling(perm: &MultisetPerm) -> bool {
    find_in_word(perm.word(), &Pattern { letters: vec![2, 1, 2], k: 2 }).is_none()
}

/// Linear-time quasi-Stirling test: every value is a bracket pair and the
/// pairs must nest (a crossing `a..b..a..b` is exactly a 1212 or 2121).
pub fn is_nested(word: &[Letter]) -> bool {
    let mut open = vec![false; word.len() / 2 + 1];
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len() / 2);
    for &v in word {
        let slot = &mut open[v as usize];
        if *slot {
            if stack.pop() != Some(v) {
                return false;
            }
            *slot = false;
        } else {
            *slot = true;
            stack.push(v);
        }
    }
    stack.is_empty()
}

/// Direct 212 test: between the two copies of every value, nothing smaller.
pub fn is_stirling_word(word: &[Letter]) -> bool {
    let mut first = vec![usize::MAX; word.len() / 2 + 1];
    for (i, &v) in word.iter().enumerate() {
        let f = &mut first[v as usize];
        if *f == usize::MAX {
            *f = i;
        } else if word[*f + 1..i].iter().any(|&x| x < v) {
            return false;
        }
    }
    true
}

/// Bitmask over [`S3`] of the patterns contained in `word`.
///
/// Single pass with value bitsets: at each middle position the left and right
/// neighbourhoods are split into values below and above the middle value, and
/// each pattern reduces to a min/max comparison. Requires values `<= 64`.
pub fn s3_containment_mask(word: &[Letter]) -> u8 {
    debug_assert!(word.iter().all(|&v| (1..=64).contains(&v)));
    let bit = |v: Letter| 1u64 << (v - 1);
    let mut right_count = [0u8; 65];
    let mut right = 0u64;
    for &v in word {
        right_count[v as usize] += 1;
        right |= bit(v);
    }
    let min = |m: u64| m.trailing_zeros();
    let max = |m: u64| 63 - m.leading_zeros();
    let mut left = 0u64;
    let mut found = 0u8;
    for &x in word {
        right_count[x as usize] -= 1;
        if right_count[x as usize] == 0 {
            right &= !bit(x);
        }
        let below = bit(x) - 1;
        let above = !(below | bit(x));
        let (lb, la, rb, ra) = (left & below, left & above, right & below, right & above);
        if lb != 0 && ra != 0 {
            found |= 1 << 0; // 123
        }
        if lb != 0 && rb != 0 {
            if min(lb) < max(rb) {
                found |= 1 << 1; // 132
            }
            if max(lb) > min(rb) {
                found |= 1 << 3; // 231
            }
        }
        if la != 0 && ra != 0 {
            if min(la) < max(ra) {
                found |= 1 << 2; // 213
            }
            if max(la) > min(ra) {
                found |= 1 << 4; // 312
            }
        }
        if la != 0 && rb != 0 {
            found |= 1 << 5; // 321
        }
        if found == 0x3f {
            break;
        }
        left |= bit(x);
    }
    found
}

/// Bitmask over [`S3`] of the patterns avoided by `word`.
pub fn s3_avoidance_mask(word: &[Letter]) -> u8 {
    !s3_containment_mask(word) & 0x3f
}

/// A pattern set prepared for bulk filtering of words.
#[derive(Debug, Clone)]
pub struct AvoidanceFilter {
    s3: u8,
    general: Vec<Pattern>,
}

impl AvoidanceFilter {
    pub fn new(set: &PatternSet) -> Result<Self, PatternError> {
        if set.is_empty() {
            return Err(PatternError::EmptySet);
        }
        Ok(Self::from_set(set))
    }

    /// Like [`AvoidanceFilter::new`] but an empty set accepts everything.
    pub fn permissive(set: &PatternSet) -> Self {
        Self::from_set(set)
    }

    fn from_set(set: &PatternSet) -> Self {
        let mut s3 = 0;
        let mut general = Vec::new();
        for p in set.iter() {
            match p.s3_index() {
                Some(i) => s3 |= 1 << i,
                None => general.push(p.clone()),
            }
        }
        Self { s3, general }
    }

    /// True iff `word` avoids every pattern of the set.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        if self.s3 != 0 {
            let contained = if word.len() <= 128 {
                s3_containment_mask(word)
            } else {
                (0..6)
                    .filter(|&i| self.s3 & (1 << i) != 0)
                    .filter(|&i| find_in_word(word, &s3_pattern(i)).is_some())
                    .fold(0u8, |m, i| m | (1 << i))
            };
            if contained & self.s3 != 0 {
                return false;
            }
        }
        self.general.iter().all(|p| find_in_word(word, p).is_none())
    }
}
