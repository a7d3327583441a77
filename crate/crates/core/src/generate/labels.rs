use crate::perm::Letter;

/// Rearranges `xs` into its lexicographic successor, allowing repeated
/// values. Returns false (leaving `xs` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let Some(pivot) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        xs.reverse();
        return false;
    };
    let swap = xs.iter().rposition(|x| *x > xs[pivot]).expect("pivot has a larger successor");
    xs.swap(pivot, swap);
    xs[pivot + 1..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The permutation of `1..=n` with lexicographic rank `rank` (0-based).
pub fn unrank_labels(n: usize, mut rank: u64) -> Vec<Letter> {
    let mut pool: Vec<Letter> = (1..=n as Letter).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let block = factorial(i);
        let idx = (rank / block) as usize;
        rank %= block;
        out.push(pool.remove(idx));
    }
    out
}

/// Consecutive label permutations `[start, end)` by rank.
#[derive(Debug, Clone)]
pub struct LabelRange {
    current: Vec<Letter>,
    remaining: u64,
}

impl LabelRange {
    pub fn new(n: usize, start: u64, end: u64) -> Self {
        let end = end.min(factorial(n));
        let start = start.min(end);
        Self { current: unrank_labels(n, start), remaining: end - start }
    }

    pub fn all(n: usize) -> Self {
        Self::new(n, 0, u64::MAX)
    }

    /// Visits every labeling in the range without allocating.
    pub fn for_each(mut self, mut f: impl FnMut(&[Letter])) {
        while self.remaining > 0 {
            f(&self.current);
            self.remaining -= 1;
            if self.remaining > 0 {
                next_permutation(&mut self.current);
            }
        }
    }
}

impl Iterator for LabelRange {
    type Item = Vec<Letter>;

    fn next(&mut self) -> Option<Vec<Letter>> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current.clone();
        self.remaining -= 1;
        if self.remaining > 0 {
            next_permutation(&mut self.current);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successor_handles_repeats() {
        let mut w = vec![1, 1, 2, 2];
        let mut seen = vec![w.clone()];
        while next_permutation(&mut w) {
            seen.push(w.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 2, 1, 2]);
        assert_eq!(w, vec![1, 1, 2, 2]);
    }

    #[test]
    fn unranking_matches_successor_order() {
        let all: Vec<_> = LabelRange::all(4).collect();
        assert_eq!(all.len(), 24);
        for (rank, labels) in all.iter().enumerate() {
            assert_eq!(&unrank_labels(4, rank as u64), labels);
        }
        let tail: Vec<_> = LabelRange::new(4, 20, 99).collect();
        assert_eq!(tail, all[20..].to_vec());
        assert_eq!(LabelRange::new(3, 4, 2).count(), 0);
    }
}
