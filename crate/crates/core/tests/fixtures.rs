//! Every fixture row recomputed through the verifier.

use std::collections::BTreeSet;

use polyu::tables::{self, fixture_ids};
use polyu::verify::{verify_tables, Verifier, VerifyOptions};
use polyu::{criterion_universal, MixedSum};

fn sum(s: &str) -> MixedSum {
    s.parse().unwrap()
}

#[test]
fn all_fixtures_verify() {
    let report = verify_tables(VerifyOptions::default()).unwrap();
    let failures: Vec<String> = report.failures().map(ToString::to_string).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    for id in fixture_ids().chain(["siegel"]) {
        assert!(report.for_table(id).count() > 0, "no checks for {id}");
    }
}

#[test]
fn every_row_is_checked() {
    let v = Verifier::new(VerifyOptions::default());
    for id in ["3.1", "4.1", "5.1"] {
        let checks = v.verify(id).unwrap();
        for row in tables::escalation_table(id).unwrap().rows {
            assert!(checks.iter().any(|c| c.row == row.case && c.check == "truant"), "{id} {}", row.case);
        }
    }
    for id in ["4.3", "text-certificates"] {
        let checks = v.verify(id).unwrap();
        for row in tables::certificate_table(id).unwrap().rows {
            assert!(checks.iter().any(|c| c.row == row.name()), "{id} {}", row.name());
        }
    }
    let checks = v.verify("5.2").unwrap();
    assert_eq!(checks.len(), tables::exceptional_table().unwrap().rows.len());
}

#[test]
fn table_4_1_discrepancy_is_the_recorded_one() {
    let t = tables::escalation_table("4.1").unwrap();
    assert_eq!(t.discrepancies.missing_from_table, vec![sum("1,2,6|1")]);
    assert!(t.discrepancies.extra_in_table.is_empty());
    let listed: BTreeSet<MixedSum> = t
        .rows
        .iter()
        .flat_map(|r| r.candidate_sums().unwrap())
        .collect();
    assert_eq!(listed.len(), 563);
    // The missing sum is a genuine candidate: it has no universal leave-one-out subsum.
    assert!(!sum("1,2,6|1").leave_one_out().iter().any(criterion_universal));
}

#[test]
fn table_5_1_parents_are_the_non_universal_sums() {
    let t = tables::escalation_table("5.1").unwrap();
    let quaternary = t.rows.iter().filter(|r| r.parent.arity() == 4).count();
    assert_eq!(quaternary, 17);
    let listed: BTreeSet<MixedSum> = t
        .rows
        .iter()
        .filter(|r| r.parent.arity() == 4)
        .flat_map(|r| r.candidate_sums().unwrap())
        .collect();
    assert_eq!(listed.len(), 708);
}

#[test]
fn table_3_1_universal_entries_are_the_ternary_list() {
    let t = tables::escalation_table("3.1").unwrap();
    let universal: BTreeSet<MixedSum> = t
        .rows
        .iter()
        .flat_map(|r| r.universal_sums().unwrap())
        .collect();
    let list: BTreeSet<MixedSum> = tables::ternary_list().unwrap().sums.into_iter().collect();
    assert_eq!(universal, list);
    let candidates: BTreeSet<MixedSum> = t
        .rows
        .iter()
        .flat_map(|r| r.candidate_sums().unwrap())
        .collect();
    assert_eq!(candidates.len(), 42);
}
