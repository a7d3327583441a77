//! Cross-checks formulas against exhaustive counts and renders the results.
//!
//! Work fans out per `(theorem, pattern set, n)` through [`Execution::map`],
//! which keeps input order, so reports are identical whatever the thread
//! count.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::exec::Execution;
use crate::formulas::{descent_conjecture_value, plateau_count, total_count};
use crate::generate::{count_filtered, descent_histogram, gen_trees, plateau_histogram, random_quasi_stirling, random_tree, Universe};
use crate::pattern::{is_quasi_stirling, PatternSet};
use crate::registry::{find, registry, Status, TheoremSpec};
use crate::tree::OrderedTree;

/// Largest order for the randomized bijection roundtrips.
pub const RANDOM_BIJECTION_CAP: usize = 12;
const RANDOM_SAMPLES: usize = 2000;
const EXHAUSTIVE_BIJECTION_CAP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// `n` below the stated range; shown but not judged.
    Skip,
    /// Conjectural; shown but never fails.
    Info,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
            Outcome::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub theorem: String,
    pub lambda: String,
    pub n: usize,
    /// `None` where the formula is undefined.
    pub formula: Option<BigInt>,
    pub brute_force: BigInt,
    pub outcome: Outcome,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl Row {
    pub fn agrees(&self) -> bool {
        self.formula.as_ref() == Some(&self.brute_force)
    }

    fn match_field(&self) -> &'static str {
        match (self.outcome, self.agrees()) {
            (Outcome::Skip, _) => "skip",
            (_, true) => "true",
            (_, false) => "false",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected table, csv or json)")),
        }
    }
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    /// Theorems in first-seen order with whether each passed, skipping the
    /// informational ones.
    pub fn theorem_outcomes(&self) -> Vec<(&str, bool)> {
        let mut out: Vec<(&str, bool)> = Vec::new();
        for row in self.rows.iter().filter(|r| r.outcome != Outcome::Info) {
            match out.iter_mut().find(|(t, _)| *t == row.theorem) {
                Some(entry) => entry.1 &= row.outcome != Outcome::Fail,
                None => out.push((&row.theorem, row.outcome != Outcome::Fail)),
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let outcomes = self.theorem_outcomes();
        let passed = outcomes.iter().filter(|(_, ok)| *ok).count();
        let mut s = format!("summary: {passed}/{} PASS", outcomes.len());
        let info = self.rows.iter().filter(|r| r.outcome == Outcome::Info).count();
        if info > 0 {
            let _ = write!(s, ", {info} INFO rows");
        }
        s
    }

    pub fn render(&self, format: Format, timing: bool) -> String {
        match format {
            Format::Table => self.render_table(timing),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(timing),
        }
    }

    pub fn render_table(&self, timing: bool) -> String {
        let mut header = vec!["theorem", "lambda", "n", "formula", "brute_force", "status"];
        if timing {
            header.push("ms");
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut line = vec![
                    r.theorem.clone(),
                    r.lambda.clone(),
                    r.n.to_string(),
                    r.formula.as_ref().map_or("-".to_string(), ToString::to_string),
                    r.brute_force.to_string(),
                    match &r.note {
                        Some(note) => format!("{} ({note})", r.outcome),
                        None => r.outcome.to_string(),
                    },
                ];
                if timing {
                    line.push(format!("{:.3}", r.elapsed.as_secs_f64() * 1e3));
                }
                line
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for line in &cells {
            for (w, c) in widths.iter_mut().zip(line) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let mut emit = |line: &[&str]| {
            let padded: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        };
        emit(&header);
        for line in &cells {
            emit(&line.iter().map(String::as_str).collect::<Vec<_>>());
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("n,lambda,formula,brute_force,match\n");
        for r in &self.rows {
            let lambda = if r.lambda.contains(',') { format!("\"{}\"", r.lambda) } else { r.lambda.clone() };
            let formula = r.formula.as_ref().map_or(String::new(), ToString::to_string);
            let _ = writeln!(out, "{},{lambda},{formula},{},{}", r.n, r.brute_force, r.match_field());
        }
        out
    }

    pub fn render_json(&self, timing: bool) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let mut obj = json!({
                "theorem": r.theorem,
                "lambda": r.lambda,
                "n": r.n,
                "formula": r.formula.as_ref().map(ToString::to_string),
                "brute_force": r.brute_force.to_string(),
                "match": match r.outcome {
                    Outcome::Skip => serde_json::Value::Null,
                    _ => r.agrees().into(),
                },
                "status": r.outcome.to_string(),
            });
            if let Some(note) = &r.note {
                obj["note"] = note.clone().into();
            }
            if timing {
                obj["ms"] = (r.elapsed.as_secs_f64() * 1e3).into();
            }
            out.push_str(&obj.to_string());
            out.push('\n');
        }
        out
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn spec_row(spec: &TheoremSpec, set: &PatternSet, n: usize, inner: Execution) -> Row {
    let (brute, elapsed) = timed(|| count_filtered(n, set, Universe::QuasiStirling, inner).expect("registry sets are nonempty"));
    let evaluation = spec.class_count(n).ok();
    let formula = evaluation.as_ref().map(|e| e.value.clone());
    let in_range = n >= spec.range_start;
    let brute_force = BigInt::from(brute);
    let mut note = None;
    let mut outcome = if !in_range {
        Outcome::Skip
    } else if formula.as_ref() == Some(&brute_force) {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    if in_range {
        for alt in &spec.alternatives {
            if alt.evaluate(n).ok() != formula {
                outcome = Outcome::Fail;
                note = Some(format!("alternative form {alt} disagrees"));
            }
        }
    }
    if spec.status == Status::Conjecture && outcome != Outcome::Skip {
        outcome = Outcome::Info;
    }
    Row { theorem: spec.id.to_string(), lambda: set.to_string(), n, formula, brute_force, outcome, note, elapsed }
}

/// Checks several theorems for `n = 1..=n_max`, one task per
/// `(theorem, set, n)`.
pub fn verify_specs(specs: &[TheoremSpec], n_max: usize, exec: Execution) -> Report {
    let tasks: Vec<(&TheoremSpec, &PatternSet, usize)> = specs
        .iter()
        .flat_map(|spec| spec.sets.iter().flat_map(move |set| (1..=n_max).map(move |n| (spec, set, n))))
        .collect();
    let rows = exec.map(&tasks, |&(spec, set, n)| spec_row(spec, set, n, Execution::Sequential));
    Report { rows }
}

pub fn verify(spec: &TheoremSpec, n_max: usize, exec: Execution) -> Report {
    verify_specs(std::slice::from_ref(spec), n_max, exec)
}

pub fn verify_all(n_max: usize, exec: Execution) -> Report {
    verify_specs(&registry(), n_max, exec)
}

fn plain_row(theorem: &str, lambda: String, n: usize, formula: BigInt, brute: BigInt, outcome_if_equal: Outcome) -> Row {
    let outcome = match (outcome_if_equal, formula == brute) {
        (Outcome::Info, _) => Outcome::Info,
        (o, true) => o,
        (_, false) => Outcome::Fail,
    };
    Row {
        theorem: theorem.to_string(),
        lambda,
        n,
        formula: Some(formula),
        brute_force: brute,
        outcome,
        note: None,
        elapsed: Duration::ZERO,
    }
}

/// Plateau histogram of each order against the closed form, one row per
/// plateau count `k = 1..=n`, plus `k = 0` which must be empty.
pub fn verify_plateaus(n_max: usize, exec: Execution) -> Report {
    let orders: Vec<usize> = (1..=n_max).collect();
    let hists = exec.map(&orders, |&n| timed(|| plateau_histogram(n, Execution::Sequential)));
    let mut rows = Vec::new();
    for (n, (hist, elapsed)) in orders.into_iter().zip(hists) {
        for k in 0..=n {
            let formula = if k == 0 { BigUint::default() } else { plateau_count(n, k).expect("1 <= k <= n") };
            let mut row = plain_row("plateaus", format!("pl={k}"), n, formula.into(), hist[k].into(), Outcome::Pass);
            row.elapsed = elapsed;
            rows.push(row);
        }
    }
    Report { rows }
}

/// Words with `n - 1` descents against `(n+1)^(n-1)`. Rows are never
/// failures.
pub fn verify_descent_conjecture(n_max: usize, exec: Execution) -> Report {
    let orders: Vec<usize> = (1..=n_max).collect();
    let counts = exec.map(&orders, |&n| timed(|| descent_histogram(n, Execution::Sequential)[n - 1]));
    let rows = orders
        .into_iter()
        .zip(counts)
        .map(|(n, (count, elapsed))| {
            let mut row =
                plain_row("descent-conjecture", "des=n-1".to_string(), n, descent_conjecture_value(n).into(), count.into(), Outcome::Info);
            row.elapsed = elapsed;
            row
        })
        .collect();
    Report { rows }
}

fn roundtrips(tree: &OrderedTree) -> bool {
    let word = tree.phi();
    is_quasi_stirling(&word)
        && OrderedTree::phi_inverse(&word).is_ok_and(|back| back == *tree && back.phi() == word)
}

/// Tree-to-word roundtrips. Orders up to 5 are exhaustive (the formula column
/// is `n! C_n`); larger orders draw seeded random trees and words.
pub fn verify_bijection(n_max: usize, seed: u64, exec: Execution) -> Report {
    let orders: Vec<usize> = (1..=n_max.min(RANDOM_BIJECTION_CAP)).collect();
    let rows = exec.map(&orders, |&n| {
        let ((expected, ok, lambda), elapsed) = timed(|| {
            if n <= EXHAUSTIVE_BIJECTION_CAP {
                let ok = gen_trees(n).filter(roundtrips).count();
                (total_count(n), ok, "exhaustive")
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
                let ok = (0..RANDOM_SAMPLES)
                    .filter(|_| {
                        let tree = random_tree(n, &mut rng);
                        let word = random_quasi_stirling(n, &mut rng);
                        roundtrips(&tree)
                            && OrderedTree::phi_inverse(&word).is_ok_and(|t| t.phi() == word)
                    })
                    .count();
                (BigUint::from(RANDOM_SAMPLES), ok, "random")
            }
        });
        let mut row = plain_row("bijection", lambda.to_string(), n, expected.into(), ok.into(), Outcome::Pass);
        row.elapsed = elapsed;
        row
    });
    Report { rows }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTheorem(pub String);

impl fmt::Display for UnknownTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown theorem {:?}", self.0)
    }
}

impl std::error::Error for UnknownTheorem {}

/// Dispatches on a theorem name: `all`, `plateaus`, `descent-conjecture`,
/// `bijection`, a registry id, or a pattern set covered by the registry.
pub fn run(target: &str, n_max: usize, seed: u64, exec: Execution) -> Result<Report, UnknownTheorem> {
    Ok(match target {
        "all" => verify_all(n_max, exec),
        "plateaus" => verify_plateaus(n_max, exec),
        "descent-conjecture" => verify_descent_conjecture(n_max, exec),
        "bijection" => verify_bijection(n_max, seed, exec),
        other => verify(&find(other).ok_or_else(|| UnknownTheorem(other.to_string()))?, n_max, exec),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    BruteForce,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Formula => "formula",
            Provenance::BruteForce => "brute_force",
        })
    }
}

/// A named integer sequence on a dense range of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqTable {
    pub name: String,
    pub entries: BTreeMap<usize, BigInt>,
    pub provenance: Provenance,
}

impl SeqTable {
    /// Comma-separated values, OEIS style.
    pub fn terms(&self) -> String {
        self.entries.values().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (n, v) in &self.entries {
            let _ = writeln!(out, "{n},{v}");
        }
        out
    }

    /// `q_n` of a pattern set by exhaustive count, `n = 1..=n_max`.
    pub fn avoiders(set: &PatternSet, n_max: usize, exec: Execution) -> Result<Self, crate::pattern::PatternError> {
        let orders: Vec<usize> = (1..=n_max).collect();
        let counts = exec.map(&orders, |&n| count_filtered(n, set, Universe::QuasiStirling, Execution::Sequential));
        let entries = orders.into_iter().zip(counts).map(|(n, c)| c.map(|c| (n, BigInt::from(c)))).collect::<Result<_, _>>()?;
        Ok(SeqTable { name: format!("q({set})"), entries, provenance: Provenance::BruteForce })
    }

    /// `n! C_n` for `n = 1..=n_max`.
    pub fn total(n_max: usize) -> Self {
        let entries = (1..=n_max).map(|n| (n, total_count(n).into())).collect();
        SeqTable { name: "total".to_string(), entries, provenance: Provenance::Formula }
    }

    /// Words with exactly `k` plateaus, `n = k..=n_max`.
    pub fn plateaus(k: usize, n_max: usize) -> Self {
        let entries = (k.max(1)..=n_max).map(|n| (n, plateau_count(n, k).expect("1 <= k <= n").into())).collect();
        SeqTable { name: format!("pl={k}"), entries, provenance: Provenance::Formula }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_theorem_rows() {
        let spec = find("132,312").unwrap();
        let report = verify(&spec, 5, Execution::Sequential);
        assert_eq!(report.rows.len(), 5);
        assert_eq!(report.rows[0].outcome, Outcome::Skip);
        assert_eq!(report.rows[0].formula, None);
        assert!(report.rows[1..].iter().all(|r| r.outcome == Outcome::Pass));
        assert!(report.passed());
    }

    #[test]
    fn zero_theorem_below_range_is_skipped() {
        let report = verify(&find("123,321").unwrap(), 5, Execution::Sequential);
        let outcomes: Vec<Outcome> = report.rows.iter().map(|r| r.outcome).collect();
        assert_eq!(outcomes[..4], [Outcome::Skip; 4]);
        assert_eq!(outcomes[4], Outcome::Pass);
        assert_eq!(report.rows[3].brute_force, BigInt::from(8));
    }

    #[test]
    fn wrong_formula_fails() {
        let mut spec = find("132,321").unwrap();
        spec.primary = crate::registry::ClosedForm::Constant(11);
        let report = verify(&spec, 4, Execution::Sequential);
        assert_eq!(report.failures().count(), 2);
        assert!(!report.passed());
        assert_eq!(report.theorem_outcomes(), vec![("132-321", false)]);
    }

    #[test]
    fn csv_layout() {
        let report = verify(&find("132,213").unwrap(), 3, Execution::Sequential);
        assert_eq!(
            report.render_csv(),
            "n,lambda,formula,brute_force,match\n1,\"132,213\",1,1,true\n2,\"132,213\",4,4,true\n3,\"132,213\",11,11,true\n"
        );
    }

    #[test]
    fn json_lines_parse() {
        let report = verify(&find("123,321").unwrap(), 5, Execution::Sequential);
        let lines: Vec<serde_json::Value> =
            report.render_json(false).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0]["match"], serde_json::Value::Null);
        assert_eq!(lines[4]["match"], true);
        assert_eq!(lines[4]["brute_force"], "0");
    }

    #[test]
    fn modes_render_identically() {
        let a = verify_all(4, Execution::Sequential).render_table(false);
        let b = verify_all(4, Execution::Parallel).render_table(false);
        assert_eq!(a, b);
        assert!(a.ends_with("summary: 18/18 PASS\n"));
    }

    #[test]
    fn plateau_and_descent_reports() {
        assert!(verify_plateaus(5, Execution::Parallel).passed());
        let d = verify_descent_conjecture(4, Execution::Sequential);
        assert!(d.rows.iter().all(|r| r.outcome == Outcome::Info && r.agrees()));
        assert!(d.theorem_outcomes().is_empty());
    }

    #[test]
    fn bijection_report() {
        let r = verify_bijection(7, 7, Execution::Parallel);
        assert_eq!(r.rows.len(), 7);
        assert!(r.passed());
        assert_eq!(r.rows[4].formula, Some(BigInt::from(5040)));
    }

    #[test]
    fn dispatcher() {
        assert!(run("bijection", 3, 0, Execution::Sequential).unwrap().passed());
        assert_eq!(run("nope", 3, 0, Execution::Sequential), Err(UnknownTheorem("nope".to_string())));
        assert_eq!(run("213,132", 3, 0, Execution::Sequential).unwrap().rows[0].theorem, "132-213");
    }

    #[test]
    fn sequences() {
        assert_eq!(SeqTable::total(6).terms(), "1,4,30,336,5040,95040");
        assert_eq!(SeqTable::avoiders(&"123".parse().unwrap(), 5, Execution::Parallel).unwrap().terms(), "1,4,19,96,510");
        assert_eq!(SeqTable::plateaus(1, 4).terms(), "1,2,6,24");
        assert_eq!(SeqTable::total(2).render_csv(), "n,value\n1,1\n2,4\n");
    }
}
