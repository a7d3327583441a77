use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{exact_div, FormulaError};

/// `a + b*sqrt(2)` with integer parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSqrt2 {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZSqrt2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ZSqrt2::new(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Mul for &ZSqrt2 {
    type Output = ZSqrt2;

    fn mul(self, rhs: &ZSqrt2) -> ZSqrt2 {
        ZSqrt2 {
            a: &self.a * &rhs.a + 2 * (&self.b * &rhs.b),
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Add for ZSqrt2 {
    type Output = ZSqrt2;

    fn add(self, rhs: ZSqrt2) -> ZSqrt2 {
        ZSqrt2 { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

/// `((1+sqrt2)^(n+1) + (1-sqrt2)^(n+1))/4 - (-1)^(n+1)/2`, evaluated as
/// `(s - 2(-1)^(n+1)) / 4` where `s` is the (integer) conjugate sum.
pub fn silver_companion(n: usize) -> Result<BigInt, FormulaError> {
    let e = n as u32 + 1;
    let sum = ZSqrt2::new(1, 1).pow(e) + ZSqrt2::new(1, -1).pow(e);
    if !sum.b.is_zero() {
        return Err(FormulaError::NonInteger { n });
    }
    let sign = if e.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    exact_div(&(sum.a - 2 * sign), &BigInt::from(4)).ok_or(FormulaError::NonInteger { n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert_eq!(ZSqrt2::new(1, 1).pow(2), ZSqrt2::new(3, 2));
        assert_eq!(ZSqrt2::new(1, -1).pow(3), ZSqrt2::new(7, -5));
        assert_eq!(ZSqrt2::new(5, 7).pow(0), ZSqrt2::new(1, 0));
    }

    #[test]
    fn first_values() {
        let got: Vec<BigInt> = (0..=5).map(|n| silver_companion(n).unwrap()).collect();
        let want: Vec<BigInt> = [1, 1, 4, 8, 21, 49].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(got, want);
    }
}
