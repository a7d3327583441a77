use num_bigint::BigInt;
use num_traits::Zero;

use super::{exact_div, FormulaError};

/// `P(x) / Q(x)` with integer coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGf {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalGf {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self, FormulaError> {
        if denominator.first().is_none_or(Zero::is_zero) {
            return Err(FormulaError::ZeroConstantTerm);
        }
        Ok(Self { numerator, denominator })
    }

    pub fn from_i64(numerator: &[i64], denominator: &[i64]) -> Result<Self, FormulaError> {
        let conv = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(conv(numerator), conv(denominator))
    }

    /// Coefficients `a_0..=a_{n_max}` of the power series, from
    /// `Q_0 a_n = P_n - sum_{i>=1} Q_i a_{n-i}`.
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<BigInt>, FormulaError> {
        let q0 = &self.denominator[0];
        let mut out: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = self.numerator.get(n).cloned().unwrap_or_default();
            for (i, qi) in self.denominator.iter().enumerate().skip(1).take(n) {
                acc -= qi * &out[n - i];
            }
            out.push(exact_div(&acc, q0).ok_or(FormulaError::NonInteger { n })?);
        }
        Ok(out)
    }

    pub fn coefficient(&self, n: usize) -> Result<BigInt, FormulaError> {
        Ok(self.coefficients(n)?.pop().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn geometric_series() {
        let gf = RationalGf::from_i64(&[1], &[1, -1]).unwrap();
        assert_eq!(gf.coefficients(6).unwrap(), ints(&[1; 7]));
    }

    #[test]
    fn fibonacci() {
        let gf = RationalGf::from_i64(&[0, 1], &[1, -1, -1]).unwrap();
        assert_eq!(gf.coefficients(10).unwrap(), ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]));
    }

    #[test]
    fn avoidance_series() {
        // (1-x)^2 / (1-3x+x^3); terms from a_n = 3a_{n-1} - a_{n-3} + [x^n](1-x)^2
        let gf = RationalGf::from_i64(&[1, -2, 1], &[1, -3, 0, 1]).unwrap();
        assert_eq!(gf.coefficients(6).unwrap(), ints(&[1, 1, 4, 11, 32, 92, 265]));
    }

    #[test]
    fn rejects_zero_constant_term() {
        assert_eq!(RationalGf::from_i64(&[1], &[0, 1]), Err(FormulaError::ZeroConstantTerm));
        assert_eq!(RationalGf::from_i64(&[1], &[]), Err(FormulaError::ZeroConstantTerm));
    }

    #[test]
    fn non_unit_constant_term() {
        let gf = RationalGf::from_i64(&[2], &[2, -2]).unwrap();
        assert_eq!(gf.coefficients(3).unwrap(), ints(&[1, 1, 1, 1]));
        let gf = RationalGf::from_i64(&[1], &[2]).unwrap();
        assert_eq!(gf.coefficients(0), Err(FormulaError::NonInteger { n: 0 }));
    }
}
