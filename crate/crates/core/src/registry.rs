//! Declarative registry of enumeration results for quasi-Stirling
//! permutations avoiding sets of patterns of length three.
//!
//! Each [`TheoremSpec`] is plain data: the pattern sets it covers, the first
//! `n` at which the stated form holds, one primary [`ClosedForm`] and any
//! number of alternative forms that must agree with it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::formulas::{silver_companion, FormulaError, RationalGf, Recurrence};
use crate::pattern::PatternSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Theorem,
    Conjecture,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Theorem => "theorem",
            Status::Conjecture => "conjecture",
        })
    }
}

/// A way of computing `q_n` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    Constant(i64),
    /// `scale * base^(n - shift)`.
    ScaledPower { scale: i64, base: i64, shift: usize },
    /// `(c_0 + c_1 n + c_2 n^2 + ...) / divisor`.
    Polynomial { coeffs: Vec<i64>, divisor: i64 },
    /// `[x^n]` of a rational generating function.
    GfCoefficient(RationalGf),
    Recurrence(Recurrence),
    /// `((1+sqrt2)^(n+1) + (1-sqrt2)^(n+1))/4 - (-1)^(n+1)/2`.
    SilverCompanion,
}

impl ClosedForm {
    pub fn evaluate(&self, n: usize) -> Result<BigInt, FormulaError> {
        match self {
            ClosedForm::Constant(c) => Ok(BigInt::from(*c)),
            ClosedForm::ScaledPower { scale, base, shift } => {
                let e = n.checked_sub(*shift).ok_or(FormulaError::Undefined { n })?;
                Ok(BigInt::from(*scale) * BigInt::from(*base).pow(e as u32))
            }
            ClosedForm::Polynomial { coeffs, divisor } => {
                let x = BigInt::from(n);
                let mut acc = BigInt::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * &x + c;
                }
                crate::formulas::exact_div(&acc, &BigInt::from(*divisor)).ok_or(FormulaError::NonInteger { n })
            }
            ClosedForm::GfCoefficient(gf) => gf.coefficient(n),
            ClosedForm::Recurrence(r) => Ok(r.term(n)),
            ClosedForm::SilverCompanion => silver_companion(n),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Constant(c) => write!(f, "{c}"),
            ClosedForm::ScaledPower { scale, base, shift } => write!(f, "{scale}*{base}^(n-{shift})"),
            ClosedForm::Polynomial { coeffs, divisor } => {
                let mut terms = Vec::new();
                for (i, &c) in coeffs.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mag = c.abs();
                    let body = match (i, mag) {
                        (0, _) => mag.to_string(),
                        (1, 1) => "n".to_string(),
                        (1, _) => format!("{mag}n"),
                        (_, 1) => format!("n^{i}"),
                        _ => format!("{mag}n^{i}"),
                    };
                    let sign = if c < 0 { "-" } else if terms.is_empty() { "" } else { "+" };
                    terms.push(format!("{sign}{body}"));
                }
                let poly = terms.join("");
                if *divisor == 1 {
                    f.write_str(&poly)
                } else {
                    write!(f, "({poly})/{divisor}")
                }
            }
            ClosedForm::GfCoefficient(_) => f.write_str("[x^n] (1-x)^2/(1-3x+x^3)"),
            ClosedForm::Recurrence(r) => {
                write!(f, "q(n) =")?;
                for (i, c) in r.lags.iter().enumerate() {
                    write!(f, " {}{}q(n-{})", if i == 0 { "" } else { "+ " }, if *c == 1 { String::new() } else { c.to_string() }, i + 1)?;
                }
                if r.prefix_sum != 0 {
                    write!(f, " + sum q(k<n)")?;
                }
                Ok(())
            }
            ClosedForm::SilverCompanion => f.write_str("((1+r2)^(n+1)+(1-r2)^(n+1))/4-(-1)^(n+1)/2"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TheoremSpec {
    pub id: &'static str,
    /// Pattern sets covered, each written as a comma-separated list.
    pub sets: Vec<PatternSet>,
    pub range_start: usize,
    pub primary: ClosedForm,
    pub alternatives: Vec<ClosedForm>,
    pub status: Status,
}

/// A formula value together with whether `n` lies in the stated range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BigInt,
    pub in_range: bool,
}

impl TheoremSpec {
    pub fn pattern_size(&self) -> usize {
        self.sets[0].len()
    }

    pub fn covers(&self, set: &PatternSet) -> bool {
        self.sets.contains(set)
    }

    /// Value of the primary form at `n`. Values below the stated range are
    /// still returned where the form is defined, flagged `in_range: false`.
    pub fn class_count(&self, n: usize) -> Result<Evaluation, FormulaError> {
        Ok(Evaluation { value: self.primary.evaluate(n)?, in_range: n >= self.range_start })
    }
}

fn sets(lists: &[&str]) -> Vec<PatternSet> {
    lists.iter().map(|s| s.parse().expect("registry pattern sets are well formed")).collect()
}

fn theorem(id: &'static str, lists: &[&str], range_start: usize, primary: ClosedForm) -> TheoremSpec {
    TheoremSpec { id, sets: sets(lists), range_start, primary, alternatives: Vec::new(), status: Status::Theorem }
}

fn poly(coeffs: &[i64], divisor: i64) -> ClosedForm {
    ClosedForm::Polynomial { coeffs: coeffs.to_vec(), divisor }
}

const FOUR_THREES: ClosedForm = ClosedForm::ScaledPower { scale: 4, base: 3, shift: 2 };

/// Every enumeration result for sets of two to five patterns of length
/// three, one representative per symmetry class.
pub fn registry() -> Vec<TheoremSpec> {
    let gf = RationalGf::from_i64(&[1, -2, 1], &[1, -3, 0, 1]).expect("nonzero constant term");
    let gf_recurrence = Recurrence { lags: vec![1, 1], prefix_sum: 1, initial: vec![1, 1] };
    let pell_recurrence = Recurrence { lags: vec![1, 3, 1], prefix_sum: 0, initial: vec![1, 1, 4] };
    vec![
        theorem("123-321", &["123,321"], 5, ClosedForm::Constant(0)),
        theorem("132-312", &["132,312"], 2, FOUR_THREES),
        theorem("132-231", &["132,231"], 2, FOUR_THREES),
        theorem("312-321", &["312,321"], 2, FOUR_THREES),
        TheoremSpec {
            alternatives: vec![ClosedForm::Recurrence(gf_recurrence)],
            ..theorem("132-213", &["132,213"], 1, ClosedForm::GfCoefficient(gf))
        },
        theorem("132-321", &["132,321"], 2, poly(&[2, -3, 2], 1)),
        theorem("123-132-321", &["123,132,321"], 5, ClosedForm::Constant(0)),
        theorem("132-213-321", &["132,213,321"], 2, poly(&[0, 2], 1)),
        theorem("123-213-312", &["123,213,312"], 2, poly(&[0, 2], 1)),
        theorem("132-213-312", &["132,213,312"], 2, poly(&[0, 2], 1)),
        TheoremSpec {
            alternatives: vec![ClosedForm::SilverCompanion],
            ..theorem("123-132-213", &["123,132,213"], 1, ClosedForm::Recurrence(pell_recurrence))
        },
        theorem("123-132-312", &["123,132,312"], 1, poly(&[-2, 3, 1], 2)),
        theorem(
            "four-with-123-321",
            &["123,132,213,321", "123,132,231,321", "123,132,312,321"],
            5,
            ClosedForm::Constant(0),
        ),
        theorem("123-132-213-231", &["123,132,213,231"], 2, ClosedForm::Constant(4)),
        theorem("123-132-231-312", &["123,132,231,312"], 3, ClosedForm::Constant(3)),
        theorem("132-213-231-312", &["132,213,231,312"], 3, ClosedForm::Constant(2)),
        theorem("123-132-213-231-321", &["123,132,213,231,321"], 5, ClosedForm::Constant(0)),
        theorem("123-132-213-231-312", &["123,132,213,231,312"], 3, ClosedForm::Constant(1)),
    ]
}

/// Looks a theorem up by id or by any pattern set it covers.
pub fn find(key: &str) -> Option<TheoremSpec> {
    let as_set = key.parse::<PatternSet>().ok();
    registry()
        .into_iter()
        .find(|t| t.id == key || as_set.as_ref().is_some_and(|s| !s.is_empty() && t.covers(s)))
}

/// Registry pattern sets of the given size, grouped the way the published
/// table groups them: sets sharing a primary form and range form one group.
pub fn table_groups(size: usize) -> Vec<(ClosedForm, usize, Vec<PatternSet>)> {
    let mut groups: Vec<(ClosedForm, usize, Vec<PatternSet>)> = Vec::new();
    for spec in registry().into_iter().filter(|t| t.pattern_size() == size) {
        match groups.iter_mut().find(|(f, r, _)| *f == spec.primary && *r == spec.range_start) {
            Some(g) => g.2.extend(spec.sets),
            None => groups.push((spec.primary, spec.range_start, spec.sets)),
        }
    }
    groups
}

/// Zero-valued theorems (the ones that need a nonvacuity witness).
pub fn is_zero_form(form: &ClosedForm) -> bool {
    *form == ClosedForm::Constant(0)
}
