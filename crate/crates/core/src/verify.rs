//! Recomputes every fixture row and records expected against actual values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::escalation::{catalogue_through, escalate, Catalogue, MAX_ARITY};
use crate::forms::{
    format_vec, good_partition, pme_check_against, pme_conclusion_check, siegel_identity_check,
};
use crate::mixed_sum::MixedSum;
use crate::represent::{criterion_universal, exceptional_set, truant, CRITICAL_INTEGERS};
use crate::tables::{self, CertificateRow, EscalationTable};
use crate::Vector;

/// Outcome of one comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub table: String,
    pub row: String,
    pub check: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for RowCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {} {}", self.table, self.row, self.check)?;
        if !self.passed {
            write!(f, ": expected {} got {}", self.expected, self.actual)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<RowCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn for_table<'a>(&'a self, table: &'a str) -> impl Iterator<Item = &'a RowCheck> + 'a {
        self.checks.iter().filter(move |c| c.table == table)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Scan bound for truants, exceptional sets and classification.
    pub bound: u64,
    /// Bound for the representation-count identity.
    pub siegel_bound: u64,
    /// Fixture ids to verify; empty means all.
    pub tables: Vec<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bound: 10_000,
            siegel_bound: 10_000,
            tables: Vec::new(),
        }
    }
}

/// Shared state for one verification run. The escalation catalogue is
/// computed on first use.
pub struct Verifier {
    opts: VerifyOptions,
    catalogue: OnceLock<Result<Catalogue>>,
}

fn show<T: fmt::Debug>(v: T) -> String {
    format!("{v:?}")
}

fn show_sums<'a>(it: impl IntoIterator<Item = &'a MixedSum>) -> String {
    let v: Vec<String> = it.into_iter().map(MixedSum::to_string).collect();
    format!("[{}]", v.join(" "))
}

fn show_vecs<'a>(it: impl IntoIterator<Item = &'a Vector>) -> String {
    let v: Vec<String> = it.into_iter().map(format_vec).collect();
    format!("{{{}}}", v.join(" "))
}

impl Verifier {
    pub fn new(opts: VerifyOptions) -> Self {
        Verifier {
            opts,
            catalogue: OnceLock::new(),
        }
    }

    pub fn options(&self) -> &VerifyOptions {
        &self.opts
    }

    /// The escalation through arity 6 at the configured bound.
    pub fn catalogue(&self) -> Result<&Catalogue> {
        self.catalogue
            .get_or_init(|| catalogue_through(MAX_ARITY, self.opts.bound))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn candidates_at(&self, arity: usize) -> Result<BTreeSet<MixedSum>> {
        Ok(self
            .catalogue()?
            .run(arity)
            .map(|r| r.candidates.clone())
            .unwrap_or_default())
    }

    fn non_universal_at(&self, arity: usize) -> Result<BTreeSet<MixedSum>> {
        Ok(self
            .catalogue()?
            .run(arity)
            .map(|r| r.failures.keys().cloned().collect())
            .unwrap_or_default())
    }

    /// Runs every requested fixture.
    pub fn run(&self) -> Result<VerifyReport> {
        let ids: Vec<String> = if self.opts.tables.is_empty() {
            tables::fixture_ids().map(str::to_string).collect()
        } else {
            self.opts.tables.clone()
        };
        let mut report = VerifyReport::default();
        for id in &ids {
            report.checks.extend(self.verify(id)?);
        }
        Ok(report)
    }

    /// Checks for one fixture id.
    pub fn verify(&self, id: &str) -> Result<Vec<RowCheck>> {
        match id {
            "3.1" | "4.1" | "5.1" => self.escalation_table(&tables::escalation_table(id)?),
            "4.3" | "text-certificates" => self.certificates(id),
            "5.2" => self.exceptional(),
            "eq3.1" => self.ternary_list(),
            "critical19" => self.critical(),
            "counts" => self.counts(),
            "siegel" => Ok(vec![self.siegel()]),
            _ => Err(Error::UnknownFixture(id.to_string())),
        }
    }

    fn escalation_table(&self, table: &EscalationTable) -> Result<Vec<RowCheck>> {
        let id = table.id.as_str();
        let bound = self.opts.bound;
        let mut out = Vec::new();
        let check = |row: &str, what: &str, expected: String, actual: String| RowCheck {
            table: id.to_string(),
            row: row.to_string(),
            check: what.to_string(),
            passed: expected == actual,
            expected,
            actual,
        };

        let truants: Vec<Result<Option<u64>>> = table
            .rows
            .par_iter()
            .map(|r| truant(&r.parent, bound).map(|t| t.truant))
            .collect();

        let mut listed: BTreeMap<usize, BTreeSet<MixedSum>> = BTreeMap::new();
        let mut parents: BTreeMap<usize, BTreeSet<MixedSum>> = BTreeMap::new();
        for (row, t) in table.rows.iter().zip(truants) {
            let case = row.case.as_str();
            let arity = row.parent.arity() + 1;
            out.push(check(case, "truant", show(Some(row.truant)), show(t?)));

            let kids = row.candidate_sums()?;
            let escalated = self.candidates_at(arity)?;
            let outside: Vec<&MixedSum> = kids.difference(&escalated).collect();
            out.push(check(case, "candidates are escalation children", "[]".into(), show_sums(outside)));

            let universal = row.universal_sums()?;
            let not_universal: Vec<&MixedSum> =
                universal.iter().filter(|s| !criterion_universal(s)).collect();
            out.push(check(case, "listed universal", "[]".into(), show_sums(not_universal)));

            let excluded = row.excluded_sums()?;
            let universal_excluded: Vec<&MixedSum> =
                excluded.iter().filter(|s| criterion_universal(s)).collect();
            out.push(check(case, "listed exclusions fail", "[]".into(), show_sums(universal_excluded)));

            listed.entry(arity).or_default().extend(kids);
            parents.entry(arity - 1).or_default().insert(row.parent.clone());
        }

        for (&arity, rows_parents) in &parents {
            let expected = self.non_universal_at(arity)?;
            out.push(check(
                "*",
                &format!("parents are the non-universal arity-{arity} sums"),
                show_sums(&expected),
                show_sums(rows_parents),
            ));
        }

        let recorded = &table.discrepancies;
        let mut missing = Vec::new();
        let mut extra = Vec::new();
        for (&arity, kids) in &listed {
            let escalated = self.candidates_at(arity)?;
            missing.extend(escalated.difference(kids).cloned());
            extra.extend(kids.difference(&escalated).cloned());
        }
        out.push(check(
            "*",
            "candidates missing from the table",
            show_sums(&recorded.missing_from_table),
            show_sums(&missing),
        ));
        out.push(check(
            "*",
            "candidates not produced by escalation",
            show_sums(&recorded.extra_in_table),
            show_sums(&extra),
        ));
        Ok(out)
    }

    fn certificates(&self, id: &str) -> Result<Vec<RowCheck>> {
        let table = tables::certificate_table(id)?;
        let rows: Vec<Result<Vec<RowCheck>>> = table
            .rows
            .par_iter()
            .map(|row| certificate_row(id, row))
            .collect();
        let mut out = Vec::new();
        for r in rows {
            out.extend(r?);
        }
        Ok(out)
    }

    fn exceptional(&self) -> Result<Vec<RowCheck>> {
        let table = tables::exceptional_table()?;
        let bound = self.opts.bound;
        Ok(table
            .rows
            .par_iter()
            .map(|row| {
                let expected = row.expected(bound);
                let actual: BTreeSet<u64> = exceptional_set(&row.sum, bound).into_iter().collect();
                RowCheck {
                    table: "5.2".into(),
                    row: row.case.clone(),
                    check: format!("exceptional set of {} up to {bound}", row.sum),
                    passed: expected == actual,
                    expected: show(&expected),
                    actual: show(&actual),
                }
            })
            .collect())
    }

    fn ternary_list(&self) -> Result<Vec<RowCheck>> {
        let list = tables::ternary_list()?;
        let expected: BTreeSet<MixedSum> = list.sums.iter().cloned().collect();
        let actual = self
            .catalogue()?
            .run(3)
            .map(|r| r.proper_universal.clone())
            .unwrap_or_default();
        Ok(vec![RowCheck {
            table: "eq3.1".into(),
            row: "*".into(),
            check: "proper universal ternary sums".into(),
            passed: expected == actual,
            expected: show_sums(&expected),
            actual: show_sums(&actual),
        }])
    }

    fn critical(&self) -> Result<Vec<RowCheck>> {
        let list = tables::critical_integers()?;
        let mut out = vec![RowCheck {
            table: "critical19".into(),
            row: "*".into(),
            check: "integers match the criterion".into(),
            passed: list.integers == CRITICAL_INTEGERS,
            expected: show(&list.integers),
            actual: show(CRITICAL_INTEGERS),
        }];
        let cat = self.catalogue()?;
        for run in &cat.runs {
            let disagree: Vec<&MixedSum> = run
                .nodes
                .iter()
                .filter(|n| n.report.criterion_passed != n.report.truant.is_none())
                .map(|n| &n.sum)
                .collect();
            out.push(RowCheck {
                table: "critical19".into(),
                row: format!("arity {}", run.arity),
                check: format!(
                    "criterion agrees with the scan on {} candidates",
                    run.nodes.len()
                ),
                passed: disagree.is_empty(),
                expected: "[]".into(),
                actual: show_sums(disagree),
            });
        }
        Ok(out)
    }

    fn counts(&self) -> Result<Vec<RowCheck>> {
        let counts = tables::counts()?;
        let cat = self.catalogue()?;
        let mut out = Vec::new();
        let mut push = |what: String, expected: String, actual: String| {
            out.push(RowCheck {
                table: "counts".into(),
                row: "*".into(),
                check: what,
                passed: expected == actual,
                expected,
                actual,
            })
        };
        for (arity, &n) in &counts.candidates {
            let arity: usize = arity.parse().map_err(|_| Error::Fixture {
                id: "counts".into(),
                reason: format!("bad arity {arity:?}"),
            })?;
            let actual = cat.run(arity).map(|r| r.candidates.len());
            push(format!("arity-{arity} candidates"), show(Some(n)), show(actual));
        }
        for (arity, &n) in &counts.proper_universal {
            let arity: usize = arity.parse().map_err(|_| Error::Fixture {
                id: "counts".into(),
                reason: format!("bad arity {arity:?}"),
            })?;
            let actual = cat.run(arity).map(|r| r.proper_universal.len());
            push(format!("arity-{arity} proper universal"), show(Some(n)), show(actual));
        }
        push(
            "total proper universal".into(),
            show(counts.total_proper_universal),
            show(cat.total_proper()),
        );
        for (arity, entries) in &counts.non_universal {
            let arity: usize = arity.parse().map_err(|_| Error::Fixture {
                id: "counts".into(),
                reason: format!("bad arity {arity:?}"),
            })?;
            let expected: BTreeMap<String, u64> =
                entries.iter().map(|e| (e.sum.to_string(), e.truant)).collect();
            let actual: BTreeMap<String, u64> = cat
                .run(arity)
                .map(|r| r.failures.iter().map(|(s, &t)| (s.to_string(), t)).collect())
                .unwrap_or_default();
            push(format!("arity-{arity} non-universal sums"), show(expected), show(actual));
        }
        let last = cat.runs.last().map(|r| r.non_universal_nodes()).unwrap_or_default();
        let beyond = if last.is_empty() { 0 } else { escalate(&last)?.len() };
        push("no candidates beyond arity 6".into(), show(0), show(beyond));
        Ok(out)
    }

    pub fn siegel(&self) -> RowCheck {
        let out = siegel_identity_check(self.opts.siegel_bound);
        RowCheck {
            table: "siegel".into(),
            row: "*".into(),
            check: format!("count identity for n = 1 mod 3 up to {}", out.bound),
            passed: out.holds(),
            expected: "no failure".into(),
            actual: match &out.first_failure {
                None => "no failure".into(),
                Some(f) => format!("n={} lhs={} rhs={}", f.n, f.lhs, f.rhs),
            },
        }
    }
}

fn reduce_mod(v: &Vector, d: i64) -> Vector {
    v.map(|c| c.rem_euclid(d))
}

/// Bad sets, witness conditions, eigenvectors and conclusion for one row.
pub fn certificate_row(table: &str, row: &CertificateRow) -> Result<Vec<RowCheck>> {
    let name = row.name();
    let mut out = Vec::new();
    let mut push = |what: String, expected: String, actual: String, passed: bool| {
        out.push(RowCheck {
            table: table.to_string(),
            row: name.clone(),
            check: what,
            passed,
            expected,
            actual,
        })
    };
    let mut all_bad = Vec::new();
    for c in &row.checks {
        let cert = good_partition(&row.f, &row.g, row.d, c.a)?;
        let expected: BTreeSet<Vector> = c.bad.iter().map(|v| reduce_mod(v, row.d)).collect();
        let actual: BTreeSet<Vector> = cert.bad.iter().copied().collect();
        push(
            format!("bad set (d,a)=({},{})", row.d, c.a),
            show_vecs(&expected),
            show_vecs(&actual),
            expected == actual,
        );
        all_bad.extend(cert.bad);
    }
    let Some(t) = &row.witness else {
        return Ok(out);
    };
    let report = pme_check_against(&row.g, row.d, t, &all_bad)?;
    push(
        format!("witness {t} conditions"),
        "(i) (ii) (iii) hold".into(),
        if report.verdict() {
            "(i) (ii) (iii) hold".into()
        } else {
            report.failures().join("; ")
        },
        report.verdict(),
    );
    if let Some(ev) = &row.eigenvectors {
        let expected: BTreeSet<Vector> = ev.iter().copied().collect();
        let actual: BTreeSet<Vector> = report.eigenvectors.iter().copied().collect();
        let flagged = report.has_flagged_eigenspace();
        push(
            "primitive eigenvectors".into(),
            show_vecs(&expected),
            format!("{}{}", show_vecs(&actual), if flagged { " (flagged eigenspace)" } else { "" }),
            expected == actual && !flagged,
        );
    }
    if let Some(values) = &row.excluded_values {
        let expected: BTreeSet<u64> = values.iter().copied().collect();
        let actual = report
            .eigenvectors
            .iter()
            .map(|z| row.g.eval(z).and_then(crate::Scalar::to_u64_checked))
            .collect::<Result<BTreeSet<u64>>>()?;
        push("values g(z)".into(), show(&expected), show(&actual), expected == actual);
    }
    if let Some(bound) = row.conclusion_bound {
        for c in &row.checks {
            let outcome = pme_conclusion_check(&row.f, &row.g, row.d, c.a, t, bound);
            let (passed, actual) = match outcome {
                Ok(o) => (o.holds(), show(o.counterexample)),
                Err(e) => (false, e.to_string()),
            };
            push(
                format!("conclusion (d,a)=({},{}) up to {bound}", row.d, c.a),
                show(None::<u64>),
                actual,
                passed,
            );
        }
    }
    Ok(out)
}

/// Verifies the requested fixtures with the given options.
pub fn verify_tables(opts: VerifyOptions) -> Result<VerifyReport> {
    let v = Verifier::new(opts);
    let mut report = v.run()?;
    if v.options().tables.is_empty() {
        report.checks.push(v.siegel());
    }
    Ok(report)
}
