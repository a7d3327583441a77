use num_bigint::BigInt;

/// `q_n = sum_i c_i q_{n-1-i} + s * (q_0 + ... + q_{n-1})`, seeded with
/// `q_0..q_{m-1}` from `initial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    pub lags: Vec<i64>,
    pub prefix_sum: i64,
    pub initial: Vec<i64>,
}

impl Recurrence {
    /// `q_0..=q_{n_max}`.
    pub fn terms(&self, n_max: usize) -> Vec<BigInt> {
        let mut q: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        let mut running = BigInt::default();
        for n in 0..=n_max {
            let next = match self.initial.get(n) {
                Some(&v) => BigInt::from(v),
                None => {
                    let mut acc = &running * self.prefix_sum;
                    for (i, &c) in self.lags.iter().enumerate() {
                        if let Some(prev) = n.checked_sub(i + 1).map(|j| &q[j]) {
                            acc += prev * c;
                        }
                    }
                    acc
                }
            };
            running += &next;
            q.push(next);
        }
        q
    }

    pub fn term(&self, n: usize) -> BigInt {
        self.terms(n).pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn plain_linear() {
        let fib = Recurrence { lags: vec![1, 1], prefix_sum: 0, initial: vec![0, 1] };
        assert_eq!(fib.terms(7), ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
        let pell_like = Recurrence { lags: vec![1, 3, 1], prefix_sum: 0, initial: vec![1, 1, 4] };
        assert_eq!(pell_like.terms(5), ints(&[1, 1, 4, 8, 21, 49]));
    }

    #[test]
    fn with_prefix_sum() {
        // q_n = q_{n-1} + q_{n-2} + sum_{k<n} q_k
        let r = Recurrence { lags: vec![1, 1], prefix_sum: 1, initial: vec![1, 1] };
        assert_eq!(r.terms(5), ints(&[1, 1, 4, 11, 32, 92]));
        assert_eq!(r.term(0), BigInt::from(1));
    }
}
