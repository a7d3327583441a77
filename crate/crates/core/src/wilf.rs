//! Wilf classes among subsets of S3, computed from one avoidance census per
//! order and compared with the symmetry orbits and the registry grouping.

use std::collections::BTreeSet;

use crate::exec::Execution;
use crate::generate::{census_count, s3_census, Universe};
use crate::pattern::PatternSet;
use crate::registry::table_groups;

/// `vectors[i][n-1]` = number of quasi-Stirling words of order `n`
/// avoiding `members[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<PatternSet>,
    pub vectors: Vec<Vec<u64>>,
}

impl Orbit {
    /// Whether every member has the same counts on `n = 1..=n_max`.
    pub fn consistent_upto(&self, n_max: usize) -> bool {
        self.vectors.windows(2).all(|w| w[0][..n_max] == w[1][..n_max])
    }

    pub fn vector(&self) -> &[u64] {
        &self.vectors[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilfReport {
    pub k: usize,
    pub n_max: usize,
    /// Symmetry orbits, ordered by least member.
    pub orbits: Vec<Orbit>,
    /// Subsets grouped by full count vector, ordered by least member.
    pub classes: Vec<(Vec<u64>, Vec<PatternSet>)>,
}

impl WilfReport {
    pub fn symmetry_consistent(&self) -> bool {
        self.orbits.iter().all(|o| o.consistent_upto(self.n_max))
    }

    pub fn render(&self) -> String {
        let mut out = format!("k={} n_max={} subsets={} orbits={} classes={}\n", self.k, self.n_max,
            self.orbits.iter().map(|o| o.members.len()).sum::<usize>(), self.orbits.len(), self.classes.len());
        for (i, orbit) in self.orbits.iter().enumerate() {
            let members: Vec<String> = orbit.members.iter().map(|m| format!("{{{m}}}")).collect();
            let class = self.classes.iter().position(|(_, sets)| sets.contains(&orbit.members[0])).unwrap();
            out.push_str(&format!(
                "orbit {} class {} {} [{}]{}\n",
                i + 1,
                class + 1,
                members.join(" "),
                join(orbit.vector()),
                if orbit.consistent_upto(self.n_max) { "" } else { " INCONSISTENT" }
            ));
        }
        out
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// One S3 census per order `1..=n_max`.
pub fn censuses(n_max: usize, exec: Execution) -> Vec<Vec<u64>> {
    (1..=n_max).map(|n| s3_census(n, Universe::QuasiStirling, exec)).collect()
}

/// Classifies all `C(6, k)` subsets of S3 of size `k`.
pub fn wilf_classify(k: usize, n_max: usize, exec: Execution) -> WilfReport {
    classify_with(k, n_max, &censuses(n_max, exec))
}

/// As [`wilf_classify`] but reusing precomputed censuses.
pub fn classify_with(k: usize, n_max: usize, censuses: &[Vec<u64>]) -> WilfReport {
    let vector = |set: &PatternSet| -> Vec<u64> {
        let mask = set.s3_mask().expect("subsets of S3");
        censuses[..n_max].iter().map(|c| census_count(c, mask)).collect()
    };
    let subsets: BTreeSet<PatternSet> =
        (0u8..64).filter(|m| m.count_ones() as usize == k).map(PatternSet::from_s3_mask).collect();
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for set in &subsets {
        if seen.contains(set) {
            continue;
        }
        let members: Vec<PatternSet> = set.symmetry_closure().into_iter().collect();
        seen.extend(members.iter().cloned());
        let vectors = members.iter().map(vector).collect();
        orbits.push(Orbit { members, vectors });
    }
    let mut classes: Vec<(Vec<u64>, Vec<PatternSet>)> = Vec::new();
    for set in &subsets {
        let v = vector(set);
        match classes.iter_mut().find(|(w, _)| *w == v) {
            Some((_, sets)) => sets.push(set.clone()),
            None => classes.push((v, vec![set.clone()])),
        }
    }
    WilfReport { k, n_max, orbits, classes }
}

/// Result of matching a classification against the registry grouping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableComparison {
    /// Registry sets in each orbit; a faithful table has exactly one each.
    pub representatives: Vec<Vec<PatternSet>>,
    /// Orbit pairs `(i, j)` whose grouping disagrees with their counts.
    pub disagreements: Vec<(usize, usize)>,
    /// Counts are compared on `n = from..=n_max`.
    pub from: usize,
}

impl TableComparison {
    pub fn matches(&self) -> bool {
        self.representatives.iter().all(|r| r.len() == 1) && self.disagreements.is_empty()
    }
}

/// Checks that registry sets of size `k` pick one representative per orbit
/// and that two orbits share a registry group exactly when their counts
/// agree from the largest stated range start onwards.
pub fn compare_with_table(report: &WilfReport) -> TableComparison {
    let groups = table_groups(report.k);
    let from = groups.iter().map(|(_, start, _)| *start).max().unwrap_or(1);
    let representatives: Vec<Vec<PatternSet>> = report
        .orbits
        .iter()
        .map(|o| groups.iter().flat_map(|(_, _, sets)| sets).filter(|s| o.members.contains(s)).cloned().collect())
        .collect();
    let group_of = |reps: &[PatternSet]| reps.first().and_then(|r| groups.iter().position(|(_, _, sets)| sets.contains(r)));
    let tail = |o: &Orbit| o.vector()[from.saturating_sub(1).min(report.n_max)..].to_vec();
    let mut disagreements = Vec::new();
    for i in 0..report.orbits.len() {
        for j in i + 1..report.orbits.len() {
            let same_group = group_of(&representatives[i]).is_some() && group_of(&representatives[i]) == group_of(&representatives[j]);
            let same_counts = tail(&report.orbits[i]) == tail(&report.orbits[j]);
            if same_group != same_counts {
                disagreements.push((i, j));
            }
        }
    }
    TableComparison { representatives, disagreements, from }
}
