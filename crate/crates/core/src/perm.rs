//! Permutations of the multiset `{1,1,2,2,...,n,n}` and their basic statistics.
//!
//! Values are 1-based everywhere a caller can see them. Text form is a single
//! line of whitespace-separated decimal values, e.g. `3 2 2 6 6 4 4 3 5 1 1 5`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A single letter of a word. Orders above 255 are not representable.
pub type Letter = u8;

/// Largest order accepted by [`MultisetPerm::new`].
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty word")]
    Empty,
    #[error("odd word length {0}")]
    OddLength(usize),
    #[error("value {value} outside 1..={order}")]
    OutOfRange { value: u64, order: usize },
    #[error("value {value} occurs {count} times, expected 2")]
    Multiplicity { value: Letter, count: usize },
    #[error("order {order} exceeds cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("segment [{i},{j}] invalid for word of length {len}")]
    BadSegment { i: usize, j: usize, len: usize },
    #[error("cannot parse {0:?} as a value")]
    Parse(String),
}

/// An element of `S_{n,n}`: a word of length `2n` in which every value of
/// `1..=n` occurs exactly twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetPerm {
    word: Vec<Letter>,
}

impl MultisetPerm {
    /// Validates `word` with the default order cap.
    pub fn new(word: Vec<Letter>) -> Result<Self, PermError> {
        Self::with_max_order(word, DEFAULT_MAX_ORDER)
    }

    /// Validates `word`, inferring `n` from its length; values outside
    /// `1..=n` or with multiplicity other than two are rejected.
    pub fn with_max_order(word: Vec<Letter>, cap: usize) -> Result<Self, PermError> {
        if word.is_empty() {
            return Err(PermError::Empty);
        }
        if !word.len().is_multiple_of(2) {
            return Err(PermError::OddLength(word.len()));
        }
        let order = word.len() / 2;
        if order > cap.min(Letter::MAX as usize) {
            return Err(PermError::OrderTooLarge { order, cap });
        }
        let mut seen = vec![0usize; order + 1];
        for &v in &word {
            if v == 0 || v as usize > order {
                return Err(PermError::OutOfRange { value: v as u64, order });
            }
            seen[v as usize] += 1;
        }
        if let Some((v, &count)) = seen.iter().enumerate().skip(1).find(|(_, &c)| c != 2) {
            return Err(PermError::Multiplicity { value: v as Letter, count });
        }
        Ok(Self { word })
    }

    /// Wraps a word already known to be valid (generator output).
    pub(crate) fn from_trusted(word: Vec<Letter>) -> Self {
        debug_assert!(Self::with_max_order(word.clone(), Letter::MAX as usize).is_ok());
        Self { word }
    }

    /// Parses a sequence of arbitrary integers; values too large to be a
    /// letter are reported as out of range rather than truncated.
    pub fn from_values(values: &[u64]) -> Result<Self, PermError> {
        let order = values.len() / 2;
        let word = values
            .iter()
            .map(|&v| Letter::try_from(v).map_err(|_| PermError::OutOfRange { value: v, order }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(word)
    }

    /// The identity-like word `1 1 2 2 ... n n`.
    pub fn increasing(order: usize) -> Self {
        let word = (1..=order as Letter).flat_map(|v| [v, v]).collect();
        Self::from_trusted(word)
    }

    pub fn order(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn into_word(self) -> Vec<Letter> {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// Always false; a valid permutation has order at least one.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn stats(&self) -> StatRecord {
        StatRecord::of_word(&self.word)
    }

    /// Distinct values of the 1-based inclusive segment `i..=j`.
    pub fn segment_set(&self, i: usize, j: usize) -> Result<SegmentSet, PermError> {
        if i == 0 || i > j || j > self.word.len() {
            return Err(PermError::BadSegment { i, j, len: self.word.len() });
        }
        Ok(SegmentSet(self.word[i - 1..j].iter().copied().collect()))
    }

    pub fn reverse(&self) -> Self {
        Self { word: self.word.iter().rev().copied().collect() }
    }

    /// Value-wise complement `v -> n + 1 - v`.
    pub fn complement(&self) -> Self {
        let top = self.order() as Letter + 1;
        Self { word: self.word.iter().map(|&v| top - v).collect() }
    }
}

impl fmt::Display for MultisetPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word)
    }
}

/// Writes a word in the space-separated line form.
pub(crate) fn write_word(f: &mut impl fmt::Write, word: &[Letter]) -> fmt::Result {
    for (i, v) in word.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl FromStr for MultisetPerm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split_whitespace()
            .map(|tok| tok.parse::<u64>().map_err(|_| PermError::Parse(tok.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_values(&values)
    }
}

impl TryFrom<Vec<Letter>> for MultisetPerm {
    type Error = PermError;

    fn try_from(word: Vec<Letter>) -> Result<Self, Self::Error> {
        Self::new(word)
    }
}

/// Descent, ascent and plateau counts of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct StatRecord {
    pub des: usize,
    pub asc: usize,
    pub pl: usize,
}

impl StatRecord {
    pub fn of_word(word: &[Letter]) -> Self {
        let mut rec = StatRecord::default();
        for pair in word.windows(2) {
            match pair[0].cmp(&pair[1]) {
                std::cmp::Ordering::Greater => rec.des += 1,
                std::cmp::Ordering::Less => rec.asc += 1,
                std::cmp::Ordering::Equal => rec.pl += 1,
            }
        }
        rec
    }

    pub fn total(&self) -> usize {
        self.des + self.asc + self.pl
    }
}

impl fmt::Display for StatRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "des={} asc={} pl={}", self.des, self.asc, self.pl)
    }
}

pub fn plateaus(word: &[Letter]) -> usize {
    word.windows(2).filter(|p| p[0] == p[1]).count()
}

pub fn descents(word: &[Letter]) -> usize {
    word.windows(2).filter(|p| p[0] > p[1]).count()
}

/// The set of values occurring in a segment, without multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SegmentSet(pub BTreeSet<Letter>);

impl SegmentSet {
    pub fn contains(&self, v: Letter) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }
}

impl<const N: usize> From<[Letter; N]> for SegmentSet {
    fn from(values: [Letter; N]) -> Self {
        SegmentSet(values.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(s: &str) -> MultisetPerm {
        MultisetPerm::new(s.bytes().map(|b| b - b'0').collect()).unwrap()
    }

    #[test]
    fn validates_examples() {
        assert_eq!(digits("1122").order(), 2);
        assert_eq!(digits("77611632554423").order(), 7);
        assert!(matches!(
            MultisetPerm::new(vec![1, 1, 2, 3]),
            Err(PermError::OutOfRange { value: 3, order: 2 })
        ));
        assert!(matches!(
            MultisetPerm::new(vec![1, 1, 2, 2, 2, 1]),
            Err(PermError::Multiplicity { .. })
        ));
        assert_eq!(MultisetPerm::new(vec![1, 1, 2]), Err(PermError::OddLength(3)));
        assert_eq!(MultisetPerm::new(vec![]), Err(PermError::Empty));
        assert!(matches!(
            MultisetPerm::new(vec![0, 0]),
            Err(PermError::OutOfRange { value: 0, .. })
        ));
    }

    #[test]
    fn order_cap_is_enforced() {
        let big = MultisetPerm::increasing(3).into_word();
        assert!(matches!(
            MultisetPerm::with_max_order(big.clone(), 2),
            Err(PermError::OrderTooLarge { order: 3, cap: 2 })
        ));
        assert!(MultisetPerm::with_max_order(big, 3).is_ok());
        let wide: Vec<u64> = (1..=70u64).flat_map(|v| [v, v]).collect();
        assert!(matches!(MultisetPerm::from_values(&wide), Err(PermError::OrderTooLarge { .. })));
    }

    #[test]
    fn text_form() {
        let p: MultisetPerm = "3 2 2 6 6 4 4 3 5 1 1 5".parse().unwrap();
        assert_eq!(p.to_string(), "3 2 2 6 6 4 4 3 5 1 1 5");
        assert!("1 x 1".parse::<MultisetPerm>().is_err());
        assert!(matches!("1 1 300 300".parse::<MultisetPerm>(), Err(PermError::OutOfRange { .. })));
        let p: MultisetPerm = "  10 10 1 1 2 2 3 3 4 4 5 5 6 6 7 7 8 8 9 9 ".parse().unwrap();
        assert_eq!(p.order(), 10);
    }

    #[test]
    fn stats_examples() {
        let s = digits("77611632554423").stats();
        assert_eq!((s.des, s.asc, s.pl), (6, 3, 4));
        for n in 1..8 {
            let s = MultisetPerm::increasing(n).stats();
            assert_eq!((s.des, s.asc, s.pl), (0, n - 1, n));
        }
        let s = digits("2211").stats();
        assert_eq!((s.des, s.asc, s.pl), (1, 0, 2));
        assert_eq!(s.total(), 3);
    }

    #[test]
    fn segment_set_examples() {
        let p: MultisetPerm = "1 4 4 2 8 8 1 2 3 3 5 5 6 6 7 7".parse().unwrap();
        assert_eq!(p.segment_set(1, 6).unwrap(), SegmentSet::from([1, 2, 4, 8]));

        let p = digits("322664435115");
        assert_eq!(p.segment_set(1, 4).unwrap(), SegmentSet::from([2, 3, 6]));
        assert_eq!(p.segment_set(5, 5).unwrap(), SegmentSet::from([6]));
        assert_eq!(p.segment_set(1, 12).unwrap(), SegmentSet::from([1, 2, 3, 4, 5, 6]));
        assert!(p.segment_set(0, 3).is_err());
        assert!(p.segment_set(4, 3).is_err());
        assert!(p.segment_set(1, 13).is_err());
    }

    #[test]
    fn reverse_and_complement_examples() {
        let p = digits("25513443661277");
        assert_eq!(p.reverse(), digits("77216634431552"));
        assert_eq!(p.complement(), digits("63375445227611"));
        assert_eq!(digits("1122").complement(), digits("2211"));
        let pal = digits("123321");
        assert_eq!(pal.reverse(), pal);
    }
}
