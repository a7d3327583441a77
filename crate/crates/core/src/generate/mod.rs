//! Exhaustive generators and sharded counting.
//!
//! Quasi-Stirling words are produced through trees: every shape (a Dyck word)
//! is combined with every labeling of its preorder positions, and the walk
//! word is read off a precomputed template. The full multiset-permutation
//! stream `S_{n,n}` exists for oracle duty only.
//!
//! Streams are resumable by `(shape index, label rank)`; the counting
//! functions shard by shape (quasi-Stirling) or by two-letter prefix (all
//! words) and fold shards through [`Execution`].

mod labels;
mod random;
mod shapes;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::exec::{add_histograms, Execution};
use crate::pattern::{is_stirling_word, s3_avoidance_mask, AvoidanceFilter, PatternError, PatternSet};
use crate::perm::{descents, plateaus, Letter, MultisetPerm};
use crate::tree::OrderedTree;

pub use labels::{factorial, next_permutation, unrank_labels, LabelRange};
pub use random::{random_quasi_stirling, random_tree};
pub use shapes::{gen_shapes, ShapeCode, ShapeTemplate, Shapes};

/// Stream of every labeled ordered tree of a given order.
#[derive(Debug, Clone)]
pub struct Trees {
    shapes: Shapes,
    template: Option<ShapeTemplate>,
    labels: LabelRange,
    order: usize,
}

pub fn gen_trees(order: usize) -> Trees {
    gen_trees_from(order, 0, 0)
}

/// Resumes the tree stream at `(shape_index, label_rank)`.
pub fn gen_trees_from(order: usize, shape_index: usize, label_rank: u64) -> Trees {
    let mut shapes = gen_shapes(order);
    let template = shapes.nth(shape_index).map(|s| s.template());
    Trees { shapes, template, labels: LabelRange::new(order, label_rank, u64::MAX), order }
}

impl Trees {
    fn next_labeling(&mut self) -> Option<(&ShapeTemplate, Vec<Letter>)> {
        loop {
            self.template.as_ref()?;
            if let Some(labels) = self.labels.next() {
                return Some((self.template.as_ref().unwrap(), labels));
            }
            self.template = self.shapes.next().map(|s| s.template());
            self.labels = LabelRange::all(self.order);
        }
    }
}

impl Iterator for Trees {
    type Item = OrderedTree;

    fn next(&mut self) -> Option<OrderedTree> {
        let (template, labels) = self.next_labeling()?;
        Some(OrderedTree::from_trusted(template.children(&labels)))
    }
}

/// Stream of every quasi-Stirling permutation of a given order, in the same
/// order as [`gen_trees`] (each item is the walk word of the matching tree).
#[derive(Debug, Clone)]
pub struct QuasiStirlingWords(Trees);

pub fn gen_quasi_stirling(order: usize) -> QuasiStirlingWords {
    QuasiStirlingWords(gen_trees(order))
}

impl Iterator for QuasiStirlingWords {
    type Item = MultisetPerm;

    fn next(&mut self) -> Option<MultisetPerm> {
        let (template, labels) = self.0.next_labeling()?;
        Some(MultisetPerm::from_trusted(template.word(&labels)))
    }
}

/// The quasi-Stirling words whose tree has the given shape.
pub fn quasi_stirling_for_shape(shape: &ShapeCode) -> impl Iterator<Item = MultisetPerm> {
    let template = shape.template();
    LabelRange::all(shape.order()).map(move |labels| MultisetPerm::from_trusted(template.word(&labels)))
}

/// Stream of all of `S_{n,n}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct AllWords {
    current: Option<Vec<Letter>>,
}

pub fn gen_all(order: usize) -> AllWords {
    AllWords { current: (order >= 1).then(|| MultisetPerm::increasing(order).into_word()) }
}

impl Iterator for AllWords {
    type Item = MultisetPerm;

    fn next(&mut self) -> Option<MultisetPerm> {
        let word = self.current.as_mut()?;
        let out = word.clone();
        if !next_permutation(word) {
            self.current = None;
        }
        Some(MultisetPerm::from_trusted(out))
    }
}

/// Which words a count ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Universe {
    /// Words avoiding 1212 and 2121.
    #[default]
    QuasiStirling,
    /// All of `S_{n,n}`.
    All,
    /// Words avoiding 212.
    Stirling,
}

impl FromStr for Universe {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quasi" => Ok(Universe::QuasiStirling),
            "all" => Ok(Universe::All),
            "stirling" => Ok(Universe::Stirling),
            other => Err(format!("unknown universe {other:?} (expected quasi, all or stirling)")),
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Universe::QuasiStirling => "quasi",
            Universe::All => "all",
            Universe::Stirling => "stirling",
        })
    }
}

/// An independent slice of a universe.
#[derive(Debug, Clone)]
pub enum Shard {
    /// All labelings of one tree shape.
    Shape(ShapeTemplate),
    /// All words beginning with `prefix`; `rest` is the sorted remainder.
    Prefix { prefix: Vec<Letter>, rest: Vec<Letter> },
}

impl Shard {
    /// Calls `f` on every word of the shard, reusing one buffer.
    pub fn for_each_word(&self, mut f: impl FnMut(&[Letter])) {
        match self {
            Shard::Shape(template) => {
                let mut buf = vec![0; 2 * template.order()];
                LabelRange::all(template.order()).for_each(|labels| {
                    template.fill(labels, &mut buf);
                    f(&buf);
                });
            }
            Shard::Prefix { prefix, rest } => {
                let mut buf: Vec<Letter> = prefix.iter().chain(rest).copied().collect();
                let split = prefix.len();
                loop {
                    f(&buf);
                    if !next_permutation(&mut buf[split..]) {
                        break;
                    }
                }
            }
        }
    }
}

/// Shards covering the universe exactly once. The Stirling universe uses the
/// quasi-Stirling shards; callers filter with [`is_stirling_word`].
pub fn shards(universe: Universe, order: usize) -> Vec<Shard> {
    match universe {
        Universe::QuasiStirling | Universe::Stirling => {
            gen_shapes(order).map(|s| Shard::Shape(s.template())).collect()
        }
        Universe::All => {
            if order == 0 {
                return Vec::new();
            }
            let base = MultisetPerm::increasing(order).into_word();
            let mut out = Vec::new();
            for a in 1..=order as Letter {
                for b in 1..=order as Letter {
                    let mut rest = base.clone();
                    let ok = [a, b].iter().all(|v| match rest.iter().position(|x| x == v) {
                        Some(i) => {
                            rest.remove(i);
                            true
                        }
                        None => false,
                    });
                    if ok {
                        out.push(Shard::Prefix { prefix: vec![a, b], rest });
                    }
                }
            }
            out
        }
    }
}

/// Folds every word of the universe; the fold sees raw letter slices.
pub fn fold_words<A, I, F, C>(universe: Universe, order: usize, exec: Execution, identity: I, fold: F, combine: C) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &[Letter]) -> A + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    let shards = shards(universe, order);
    let stirling_only = universe == Universe::Stirling;
    exec.fold(
        &shards,
        &identity,
        |acc, shard| {
            let mut acc = Some(acc);
            shard.for_each_word(|w| {
                if !stirling_only || is_stirling_word(w) {
                    acc = Some(fold(acc.take().unwrap(), w));
                }
            });
            acc.unwrap()
        },
        &combine,
    )
}

/// Number of words in the universe satisfying `pred`.
pub fn count_where<P>(universe: Universe, order: usize, exec: Execution, pred: P) -> u64
where
    P: Fn(&[Letter]) -> bool + Sync + Send,
{
    fold_words(universe, order, exec, || 0u64, |n, w| n + pred(w) as u64, |a, b| a + b)
}

/// Size of the universe by exhaustive streaming.
pub fn count_universe(order: usize, universe: Universe, exec: Execution) -> BigUint {
    BigUint::from(count_where(universe, order, exec, |_| true))
}

/// Exact number of words of the universe avoiding every pattern of `set`.
pub fn count_filtered(
    order: usize,
    set: &PatternSet,
    universe: Universe,
    exec: Execution,
) -> Result<BigUint, PatternError> {
    let filter = AvoidanceFilter::new(set)?;
    Ok(BigUint::from(count_where(universe, order, exec, |w| filter.accepts(w))))
}

/// First word of the universe (in shard order) avoiding `set`.
pub fn find_avoider(order: usize, set: &PatternSet, universe: Universe) -> Result<Option<MultisetPerm>, PatternError> {
    let filter = AvoidanceFilter::new(set)?;
    for shard in shards(universe, order) {
        let mut found = None;
        shard.for_each_word(|w| {
            if found.is_none()
                && (universe != Universe::Stirling || is_stirling_word(w))
                && filter.accepts(w)
            {
                found = Some(w.to_vec());
            }
        });
        if let Some(w) = found {
            return Ok(Some(MultisetPerm::from_trusted(w)));
        }
    }
    Ok(None)
}

fn histogram<S>(universe: Universe, order: usize, exec: Execution, buckets: usize, stat: S) -> Vec<u64>
where
    S: Fn(&[Letter]) -> usize + Sync + Send,
{
    fold_words(
        universe,
        order,
        exec,
        || vec![0u64; buckets],
        |mut h, w| {
            h[stat(w)] += 1;
            h
        },
        add_histograms,
    )
}

/// `h[k]` = number of quasi-Stirling words of the order with `k` plateaus.
pub fn plateau_histogram(order: usize, exec: Execution) -> Vec<u64> {
    histogram(Universe::QuasiStirling, order, exec, order + 1, plateaus)
}

/// `h[k]` = number of quasi-Stirling words of the order with `k` descents.
pub fn descent_histogram(order: usize, exec: Execution) -> Vec<u64> {
    histogram(Universe::QuasiStirling, order, exec, 2 * order, descents)
}

/// `c[m]` = number of words whose set of avoided S3 patterns is exactly the
/// bitmask `m`. Any subset count follows by summing over supersets.
pub fn s3_census(order: usize, universe: Universe, exec: Execution) -> Vec<u64> {
    histogram(universe, order, exec, 64, |w| s3_avoidance_mask(w) as usize)
}

/// Number of words in a census avoiding every pattern of the S3 mask.
pub fn census_count(census: &[u64], mask: u8) -> u64 {
    census.iter().enumerate().filter(|(m, _)| (*m as u8) & mask == mask).map(|(_, c)| c).sum()
}
