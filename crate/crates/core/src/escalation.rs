//! Escalation: growing candidate universal sums one term at a time.
//!
//! A universal sum represents the truant of each of its non-universal
//! subsums, so some extra coefficient must be at most that truant. Starting
//! from the empty sum (truant 1), every non-universal node of arity `k - 1`
//! is extended by one square or octagonal coefficient `c <= t`. Children are
//! kept in canonical form, deduplicated across parents, and dropped when a
//! leave-one-out subsum is already universal (such a child can never be a
//! proper universal sum).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixed_sum::MixedSum;
use crate::polygonal::Order;
use crate::represent::{criterion_universal, truant, TruantReport, Verdict};

/// Default search bound for classification runs.
pub const DEFAULT_BOUND: u64 = 100_000;

/// Arity at which escalation is known to stop.
pub const MAX_ARITY: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscalationNode {
    pub sum: MixedSum,
    /// First parent (in canonical order) that produced this sum.
    pub parent: Option<MixedSum>,
    pub report: TruantReport,
}

impl EscalationNode {
    /// The escalation root: the empty sum, whose truant is 1.
    pub fn root() -> Self {
        EscalationNode {
            sum: MixedSum::empty(),
            parent: None,
            report: TruantReport {
                verdict: Verdict::NonUniversal,
                truant: Some(1),
                searched_bound: 1,
                criterion_passed: false,
            },
        }
    }
}

/// A candidate of the next arity together with the parent that produced it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Candidate {
    pub sum: MixedSum,
    pub parent: MixedSum,
}

/// Children of non-universal `parents`, deduplicated, with non-proper children removed.
pub fn escalate(parents: &[EscalationNode]) -> Result<Vec<Candidate>> {
    let mut children: BTreeMap<MixedSum, MixedSum> = BTreeMap::new();
    for node in parents {
        let t = match (&node.report.verdict, node.report.truant) {
            (Verdict::NonUniversal, Some(t)) => t,
            _ => return Err(Error::UniversalParent(node.sum.clone())),
        };
        for order in [Order::Square, Order::Octagonal] {
            for c in 1..=t {
                let child = node.sum.with_term(order, c)?;
                match children.get(&child) {
                    Some(p) if *p <= node.sum => {}
                    _ => {
                        children.insert(child, node.sum.clone());
                    }
                }
            }
        }
    }
    let kept: Vec<Candidate> = children
        .into_par_iter()
        .filter(|(sum, _)| !sum.leave_one_out().iter().any(criterion_universal))
        .map(|(sum, parent)| Candidate { sum, parent })
        .collect();
    Ok(kept)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRun {
    pub arity: usize,
    pub bound: u64,
    pub nodes: Vec<EscalationNode>,
    pub candidates: BTreeSet<MixedSum>,
    pub universal: BTreeSet<MixedSum>,
    pub proper_universal: BTreeSet<MixedSum>,
    pub failures: BTreeMap<MixedSum, u64>,
}

impl ClassificationRun {
    pub fn non_universal_nodes(&self) -> Vec<EscalationNode> {
        self.nodes
            .iter()
            .filter(|n| !n.report.is_universal())
            .cloned()
            .collect()
    }

    /// One record per candidate, sorted by notation.
    pub fn records(&self) -> Vec<RunRecord> {
        self.nodes
            .iter()
            .map(|node| RunRecord {
                notation: node.sum.notation(),
                arity: self.arity,
                verdict: node.report.verdict,
                truant: node.report.truant,
                proper: self.proper_universal.contains(&node.sum),
            })
            .collect()
    }

    /// One CSV row per candidate: `notation,arity,verdict,truant,proper`.
    /// Notations containing commas are quoted.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Fixture {
            id: "csv".into(),
            reason: e.to_string(),
        };
        w.write_record(["notation", "arity", "verdict", "truant", "proper"])
            .map_err(io)?;
        for r in self.records() {
            w.write_record([
                r.notation,
                r.arity.to_string(),
                r.verdict.to_string(),
                r.truant.map(|t| t.to_string()).unwrap_or_default(),
                r.proper.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Fixture {
            id: "csv".into(),
            reason: e.to_string(),
        })?;
        Ok(String::from_utf8(bytes).expect("csv output is ascii"))
    }

    /// `{"arity", "bound", "candidates", "universal", "proper_universal", "records"}`.
    pub fn to_json(&self) -> String {
        let export = RunExport {
            arity: self.arity,
            bound: self.bound,
            candidates: self.candidates.len(),
            universal: self.universal.len(),
            proper_universal: self.proper_universal.iter().map(MixedSum::notation).collect(),
            records: self.records(),
        };
        serde_json::to_string_pretty(&export).expect("run serializes")
    }
}

/// One classified candidate, as exported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub notation: String,
    pub arity: usize,
    pub verdict: Verdict,
    pub truant: Option<u64>,
    pub proper: bool,
}

#[derive(Serialize)]
struct RunExport {
    arity: usize,
    bound: u64,
    candidates: usize,
    universal: usize,
    proper_universal: Vec<String>,
    records: Vec<RunRecord>,
}

/// Classifies each candidate by the 19-integer criterion cross-checked with a
/// scan to `bound`, then marks universal sums whose leave-one-out subsums are
/// all non-universal as proper.
pub fn classify(candidates: &[Candidate], arity: usize, bound: u64) -> Result<ClassificationRun> {
    let reports: Vec<(Candidate, TruantReport)> = candidates
        .par_iter()
        .map(|c| truant(&c.sum, bound).map(|r| (c.clone(), r)))
        .collect::<Result<_>>()?;

    let mut run = ClassificationRun {
        arity,
        bound,
        nodes: Vec::with_capacity(reports.len()),
        candidates: BTreeSet::new(),
        universal: BTreeSet::new(),
        proper_universal: BTreeSet::new(),
        failures: BTreeMap::new(),
    };
    for (cand, report) in reports {
        run.candidates.insert(cand.sum.clone());
        match report.truant {
            Some(t) => {
                run.failures.insert(cand.sum.clone(), t);
            }
            None => {
                run.universal.insert(cand.sum.clone());
            }
        }
        run.nodes.push(EscalationNode {
            sum: cand.sum,
            parent: Some(cand.parent),
            report,
        });
    }
    run.nodes.sort_by(|a, b| a.sum.cmp(&b.sum));
    run.proper_universal = run
        .universal
        .par_iter()
        .filter(|s| !s.leave_one_out().iter().any(criterion_universal))
        .cloned()
        .collect();
    Ok(run)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalogue {
    pub bound: u64,
    pub runs: Vec<ClassificationRun>,
}

impl Catalogue {
    pub fn total_proper(&self) -> usize {
        self.runs.iter().map(|r| r.proper_universal.len()).sum()
    }

    pub fn run(&self, arity: usize) -> Option<&ClassificationRun> {
        self.runs.iter().find(|r| r.arity == arity)
    }

    /// `3:6 4:547 5:707 6:11 total:1271`, listing arities with proper universal sums.
    pub fn summary_line(&self) -> String {
        let mut s = String::new();
        for run in self.runs.iter().filter(|r| !r.proper_universal.is_empty()) {
            let _ = write!(s, "{}:{} ", run.arity, run.proper_universal.len());
        }
        let _ = write!(s, "total:{}", self.total_proper());
        s
    }
}

/// Escalates from the empty sum through arity `max_arity`.
pub fn catalogue_through(max_arity: usize, bound: u64) -> Result<Catalogue> {
    let mut parents = vec![EscalationNode::root()];
    let mut runs = Vec::new();
    for arity in 1..=max_arity {
        let candidates = escalate(&parents)?;
        let run = classify(&candidates, arity, bound)?;
        parents = run.non_universal_nodes();
        runs.push(run);
        if parents.is_empty() {
            break;
        }
    }
    Ok(Catalogue { bound, runs })
}

/// Runs escalation to quiescence and fails if arity-7 candidates would appear.
pub fn full_catalogue(bound: u64) -> Result<Catalogue> {
    let cat = catalogue_through(MAX_ARITY, bound)?;
    if let Some(last) = cat.runs.last() {
        let leftover = last.non_universal_nodes();
        if !leftover.is_empty() {
            let next = escalate(&leftover)?;
            if !next.is_empty() {
                return Err(Error::NoQuiescence(next.len()));
            }
        }
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(s: &str) -> MixedSum {
        s.parse().unwrap()
    }

    #[test]
    fn unary_and_binary_levels() {
        let unary = escalate(&[EscalationNode::root()]).unwrap();
        let names: Vec<String> = unary.iter().map(|c| c.sum.to_string()).collect();
        assert_eq!(names, ["1|", "|1"]);
        let run = classify(&unary, 1, 1000).unwrap();
        assert_eq!(run.failures.values().copied().collect::<Vec<_>>(), vec![2, 2]);

        let binary = escalate(&run.non_universal_nodes()).unwrap();
        let names: BTreeSet<String> = binary.iter().map(|c| c.sum.to_string()).collect();
        let want: BTreeSet<String> = ["1,1|", "1,2|", "1|1", "1|2", "2|1", "|1,1", "|1,2"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(names, want);
    }

    #[test]
    fn universal_parent_is_rejected() {
        let node = EscalationNode {
            sum: sum("1,1|1"),
            parent: None,
            report: truant(&sum("1,1|1"), 1000).unwrap(),
        };
        assert_eq!(escalate(&[node]), Err(Error::UniversalParent(sum("1,1|1"))));
    }

    #[test]
    fn children_with_universal_subsums_are_dropped() {
        // truant 7; octagonal 1 or 2 would contain the universal 1,1|1 or 1,1|2
        let parent = EscalationNode {
            sum: sum("1,1,1|"),
            parent: None,
            report: truant(&sum("1,1,1|"), 1000).unwrap(),
        };
        assert_eq!(parent.report.truant, Some(7));
        let kids: BTreeSet<String> = escalate(&[parent])
            .unwrap()
            .into_iter()
            .map(|c| c.sum.to_string())
            .collect();
        assert!(!kids.contains("1,1,1|1"));
        assert!(!kids.contains("1,1,1|2"));
        assert!(kids.contains("1,1,1|3"));
        assert!(kids.contains("1,1,1,7|"));
        assert_eq!(kids.len(), 12);
    }

    #[test]
    fn ternary_level() {
        let cat = catalogue_through(3, 2000).unwrap();
        let run = cat.run(3).unwrap();
        assert_eq!(run.candidates.len(), 42);
        assert_eq!(run.failures.len(), 36);
        let got: Vec<String> = run.proper_universal.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["1,1|1", "1,1|2", "1,3|1", "1|1,1", "2,3|1", "2|1,1"]);
    }

    #[test]
    fn json_export() {
        let cat = catalogue_through(2, 100).unwrap();
        let js: serde_json::Value = serde_json::from_str(&cat.runs[1].to_json()).unwrap();
        assert_eq!(js["arity"], 2);
        assert_eq!(js["candidates"], 7);
        assert_eq!(js["records"][0]["notation"], "1,1|");
        assert_eq!(js["records"][0]["verdict"], "non-universal");
        assert_eq!(js["records"][0]["truant"], 3);
    }

    #[test]
    fn csv_quotes_notation() {
        let cat = catalogue_through(1, 100).unwrap();
        let csv = cat.runs[0].to_csv().unwrap();
        assert_eq!(
            csv,
            "notation,arity,verdict,truant,proper\n1|,1,non-universal,2,false\n|1,1,non-universal,2,false\n"
        );
        let cat = catalogue_through(2, 100).unwrap();
        let csv = cat.runs[1].to_csv().unwrap();
        assert!(csv.contains("\"1,1|\",2,non-universal,3,false"));
    }
}
