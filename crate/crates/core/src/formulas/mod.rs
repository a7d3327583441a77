//! Exact enumeration formulas. Everything is computed in arbitrary-precision
//! integers; expressions involving `sqrt(2)` or division are rearranged so
//! that every intermediate value is an integer.

mod gf;
mod recurrence;
mod surd;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

pub use gf::RationalGf;
pub use recurrence::Recurrence;
pub use surd::{silver_companion, ZSqrt2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("k = {k} outside 1..={n}")]
    KOutOfRange { n: usize, k: usize },
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("formula is not an integer at n = {n}")]
    NonInteger { n: usize },
    #[error("formula undefined at n = {n}")]
    Undefined { n: usize },
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Binomial coefficient by the multiplicative formula (exact at every step).
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k as u64).fold(BigUint::one(), |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Catalan numbers `C_0..=C_n` from `C_{m} = sum_i C_i C_{m-1-i}`.
pub fn catalan_table(n: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = Vec::with_capacity(n + 1);
    c.push(BigUint::one());
    for m in 1..=n {
        let next = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
        c.push(next);
    }
    c
}

pub fn catalan(n: usize) -> BigUint {
    catalan_table(n).pop().unwrap()
}

/// Number of quasi-Stirling permutations of order `n`: `n! * C_n`.
pub fn total_count(n: usize) -> BigUint {
    factorial(n) * catalan(n)
}

/// `(2n-1)!!`, the number of Stirling permutations of order `n`.
pub fn stirling_count(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * (2 * i - 1))
}

/// Quasi-Stirling permutations of order `n` with exactly `k` plateaus:
/// `(n!/k) * C(n-1, k-1) * C(n, k-1)`.
pub fn plateau_count(n: usize, k: usize) -> Result<BigUint, FormulaError> {
    if k == 0 || k > n {
        return Err(FormulaError::KOutOfRange { n, k });
    }
    let numerator = factorial(n) * binomial(n - 1, k - 1) * binomial(n, k - 1);
    let k = BigUint::from(k);
    if !(&numerator % &k).is_zero() {
        return Err(FormulaError::NonInteger { n: 0 });
    }
    Ok(numerator / k)
}

/// Conjectured number of quasi-Stirling permutations with `n - 1` descents:
/// `(n+1)^(n-1)`.
pub fn descent_conjecture_value(n: usize) -> BigUint {
    assert!(n >= 1);
    BigUint::from(n + 1).pow(n as u32 - 1)
}

/// Exact quotient, or `None` if `d` does not divide `x`.
pub(crate) fn exact_div(x: &BigInt, d: &BigInt) -> Option<BigInt> {
    (x % d).is_zero().then(|| x / d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(3), big(5));
        assert_eq!(catalan(10), big(16796));
        // C_{m+1} = C_m * 2(2m+1)/(m+2)
        let table = catalan_table(40);
        for m in 0..40u64 {
            assert_eq!(&table[m as usize + 1] * (m + 2), &table[m as usize] * (2 * (2 * m + 1)));
        }
    }

    #[test]
    fn total_counts() {
        let got: Vec<BigUint> = (1..=7).map(total_count).collect();
        let want: Vec<BigUint> = [1u64, 4, 30, 336, 5040, 95040, 2162160].map(big).to_vec();
        assert_eq!(got, want);
    }

    #[test]
    fn plateau_counts() {
        assert_eq!(plateau_count(3, 2).unwrap(), big(18));
        for n in 1..=9 {
            assert_eq!(plateau_count(n, n).unwrap(), factorial(n));
            let total: BigUint = (1..=n).map(|k| plateau_count(n, k).unwrap()).sum();
            assert_eq!(total, total_count(n));
        }
        assert_eq!(plateau_count(3, 0), Err(FormulaError::KOutOfRange { n: 3, k: 0 }));
        assert_eq!(plateau_count(3, 4), Err(FormulaError::KOutOfRange { n: 3, k: 4 }));
    }

    #[test]
    fn small_closed_forms() {
        assert_eq!(descent_conjecture_value(1), big(1));
        assert_eq!(descent_conjecture_value(2), big(3));
        assert_eq!(descent_conjecture_value(4), big(125));
        assert_eq!(stirling_count(4), big(105));
        assert_eq!(binomial(10, 3), big(120));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(factorial(20), big(2_432_902_008_176_640_000));
    }
}
