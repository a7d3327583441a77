use std::collections::HashSet;

use proptest::prelude::*;
use quasi_stirling::generate::{count_filtered, gen_all, gen_quasi_stirling, gen_trees, random_quasi_stirling, random_tree, Universe};
use quasi_stirling::pattern::{is_nested, is_quasi_stirling, is_stirling, is_stirling_word, S3, s3_pattern};
use quasi_stirling::tree::block_decompose;
use quasi_stirling::{Execution, MultisetPerm, OrderedTree, PatternSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word_strategy() -> impl Strategy<Value = MultisetPerm> {
    (1usize..=12, any::<u64>()).prop_map(|(n, seed)| random_quasi_stirling(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn tree_strategy() -> impl Strategy<Value = OrderedTree> {
    (1usize..=12, any::<u64>()).prop_map(|(n, seed)| random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn any_word_strategy() -> impl Strategy<Value = MultisetPerm> {
    (1usize..=8).prop_flat_map(|n| {
        Just(MultisetPerm::increasing(n).into_word()).prop_shuffle().prop_map(|w| MultisetPerm::new(w).unwrap())
    })
}

proptest! {
    #[test]
    fn statistics_total(perm in any_word_strategy()) {
        let s = perm.stats();
        prop_assert_eq!(s.des + s.asc + s.pl, 2 * perm.order() - 1);
    }

    #[test]
    fn symmetries_are_involutions(perm in any_word_strategy()) {
        prop_assert_eq!(perm.reverse().reverse(), perm.clone());
        prop_assert_eq!(perm.complement().complement(), perm.clone());
        prop_assert_eq!(perm.reverse().complement(), perm.complement().reverse());
        let s = perm.stats();
        let r = perm.reverse().stats();
        prop_assert_eq!((s.des, s.asc, s.pl), (r.asc, r.des, r.pl));
    }

    #[test]
    fn tree_roundtrip(tree in tree_strategy()) {
        let word = tree.phi();
        prop_assert!(is_nested(word.word()));
        prop_assert_eq!(OrderedTree::phi_inverse(&word).unwrap(), tree.clone());
        prop_assert_eq!(tree.to_string().parse::<OrderedTree>().unwrap(), tree);
    }

    #[test]
    fn word_roundtrip(word in word_strategy()) {
        prop_assert_eq!(OrderedTree::phi_inverse(&word).unwrap().phi(), word);
    }

    #[test]
    fn quasi_stirling_closed_under_symmetry(word in word_strategy()) {
        prop_assert!(is_quasi_stirling(&word.reverse()));
        prop_assert!(is_quasi_stirling(&word.complement()));
    }

    #[test]
    fn membership_tests_agree(perm in any_word_strategy()) {
        prop_assert_eq!(is_quasi_stirling(&perm), is_nested(perm.word()));
        prop_assert_eq!(OrderedTree::phi_inverse(&perm).is_ok(), is_nested(perm.word()));
        prop_assert_eq!(is_stirling(&perm), is_stirling_word(perm.word()));
    }
}

#[test]
fn rejection_criteria_agree_exhaustively() {
    for n in 1..=4 {
        for perm in gen_all(n) {
            assert_eq!(OrderedTree::phi_inverse(&perm).is_ok(), is_quasi_stirling(&perm), "{perm}");
        }
    }
}

#[test]
fn stream_equals_filtered_universe() {
    for n in 1..=5 {
        let streamed: HashSet<MultisetPerm> = gen_quasi_stirling(n).collect();
        let filtered: HashSet<MultisetPerm> = gen_all(n).filter(is_quasi_stirling).collect();
        assert_eq!(streamed, filtered);
    }
}

#[test]
fn universe_sizes() {
    let all: Vec<usize> = (1..=5).map(|n| gen_all(n).count()).collect();
    assert_eq!(all, vec![1, 6, 90, 2520, 113400]);
    let stirling: Vec<usize> = (1..=5).map(|n| gen_all(n).filter(is_stirling).count()).collect();
    assert_eq!(stirling, vec![1, 3, 15, 105, 945]);
}

#[test]
fn walk_structure() {
    for n in 1..=5 {
        for tree in gen_trees(n) {
            let word = tree.phi();
            let mut seen = HashSet::new();
            let firsts: Vec<u8> = word.word().iter().copied().filter(|v| seen.insert(*v)).collect();
            assert_eq!(firsts, tree.preorder());
            let heads: Vec<u8> = block_decompose(&word).unwrap().iter().map(|b| b.head).collect();
            assert_eq!(heads, tree.root_children());
            if tree.is_increasing() {
                assert!(is_stirling(&word), "{tree}");
            }
        }
    }
}

#[test]
fn avoidance_transported_by_symmetry() {
    for mask in 1u8..63 {
        let set = PatternSet::from_s3_mask(mask);
        for n in 1..=4 {
            let count = |s: &PatternSet| count_filtered(n, s, Universe::QuasiStirling, Execution::Sequential).unwrap();
            let base = count(&set);
            assert_eq!(count(&set.reverse()), base);
            assert_eq!(count(&set.complement()), base);
        }
    }
    assert_eq!(S3.len(), 6);
    assert_eq!(s3_pattern(5).to_string(), "321");
}

#[test]
fn execution_modes_agree() {
    let set: PatternSet = "132,213".parse().unwrap();
    for n in 1..=6 {
        assert_eq!(
            count_filtered(n, &set, Universe::QuasiStirling, Execution::Sequential),
            count_filtered(n, &set, Universe::QuasiStirling, Execution::Parallel)
        );
    }
}
