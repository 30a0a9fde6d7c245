//! Embedded regression fixtures: escalation tables, exceptional sets,
//! congruence data, the ternary list and the critical integers.
//!
//! The data lives in JSON files under `fixtures/` and is compiled into the
//! crate. The schema is documented in `fixtures/SCHEMA.md`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixed_sum::MixedSum;
use crate::polygonal::Order;
use crate::{Form, Matrix, Vector};

const SOURCES: [(&str, &str); 9] = [
    ("3.1", include_str!("../fixtures/table-3.1.json")),
    ("4.1", include_str!("../fixtures/table-4.1.json")),
    ("4.3", include_str!("../fixtures/table-4.3.json")),
    ("5.1", include_str!("../fixtures/table-5.1.json")),
    ("5.2", include_str!("../fixtures/table-5.2.json")),
    ("eq3.1", include_str!("../fixtures/eq3.1.json")),
    ("critical19", include_str!("../fixtures/critical19.json")),
    ("text-certificates", include_str!("../fixtures/text-certificates.json")),
    ("counts", include_str!("../fixtures/counts.json")),
];

/// Every fixture id, in a fixed order.
pub fn fixture_ids() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(id, _)| *id)
}

/// The raw JSON text of a fixture.
pub fn fixture_source(id: &str) -> Result<&'static str> {
    SOURCES
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, src)| *src)
        .ok_or_else(|| Error::UnknownFixture(id.to_string()))
}

/// Serializes a value through its `Display` and `FromStr` implementations.
mod text {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            match Option::<String>::deserialize(d)? {
                Some(s) => s.parse().map(Some).map_err(de::Error::custom),
                None => Ok(None),
            }
        }
    }

    pub mod list {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| s.parse().map_err(de::Error::custom))
                .collect()
        }
    }
}

/// A single coefficient or an inclusive range `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RangeItem {
    Single(u64),
    Span([u64; 2]),
}

/// A union of coefficients and inclusive ranges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RangeSet(pub Vec<RangeItem>);

impl RangeSet {
    pub fn values(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for item in &self.0 {
            match *item {
                RangeItem::Single(c) => {
                    out.insert(c);
                }
                RangeItem::Span([lo, hi]) => out.extend(lo..=hi),
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Coefficient sets for a new square term and a new octagonal term.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRanges {
    #[serde(default, skip_serializing_if = "RangeSet::is_empty")]
    pub squares: RangeSet,
    #[serde(default, skip_serializing_if = "RangeSet::is_empty")]
    pub octagonals: RangeSet,
}

impl CoeffRanges {
    /// The children of `parent` obtained by adding one listed coefficient.
    pub fn children(&self, parent: &MixedSum) -> Result<BTreeSet<MixedSum>> {
        let mut out = BTreeSet::new();
        for (order, set) in [(Order::Square, &self.squares), (Order::Octagonal, &self.octagonals)] {
            for c in set.values() {
                out.insert(parent.with_term(order, c)?);
            }
        }
        Ok(out)
    }
}

/// One row of an escalation table: a non-universal parent, its truant and
/// the children it contributes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscalationRow {
    pub case: String,
    #[serde(with = "text")]
    pub parent: MixedSum,
    pub truant: u64,
    /// Children already produced by an earlier row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub considered_already: Option<CoeffRanges>,
    /// Coefficient ranges of the children listed in the row.
    pub candidates: CoeffRanges,
    /// Children listed as universal, where the table singles them out.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal: Option<CoeffRanges>,
    /// Children listed as not universal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclusions: Option<CoeffRanges>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl EscalationRow {
    /// Range children minus the considered-already children of the same row.
    pub fn candidate_sums(&self) -> Result<BTreeSet<MixedSum>> {
        let mut out = self.candidates.children(&self.parent)?;
        if let Some(ca) = &self.considered_already {
            for s in ca.children(&self.parent)? {
                out.remove(&s);
            }
        }
        Ok(out)
    }

    pub fn universal_sums(&self) -> Result<BTreeSet<MixedSum>> {
        self.universal
            .as_ref()
            .map_or(Ok(BTreeSet::new()), |u| u.children(&self.parent))
    }

    pub fn excluded_sums(&self) -> Result<BTreeSet<MixedSum>> {
        self.exclusions
            .as_ref()
            .map_or(Ok(BTreeSet::new()), |u| u.children(&self.parent))
    }
}

/// Candidates the recomputation produces but the table omits, and the reverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancies {
    #[serde(with = "text::list")]
    pub missing_from_table: Vec<MixedSum>,
    #[serde(with = "text::list")]
    pub extra_in_table: Vec<MixedSum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscalationTable {
    pub id: String,
    pub title: String,
    pub child_arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    #[serde(default)]
    pub discrepancies: Discrepancies,
    pub rows: Vec<EscalationRow>,
}

/// `{r·base^s + offset : r ∈ multipliers, s >= min_exponent}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub multipliers: Vec<u64>,
    pub base: u64,
    pub min_exponent: u32,
    pub offset: i64,
}

impl ClosedForm {
    /// The positive members that are at most `bound`.
    pub fn expand(&self, bound: u64) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for &r in &self.multipliers {
            let mut s = self.min_exponent;
            loop {
                let Some(v) = self
                    .base
                    .checked_pow(s)
                    .and_then(|p| p.checked_mul(r))
                    .and_then(|p| p.checked_add_signed(self.offset))
                else {
                    break;
                };
                if v > bound.saturating_add(self.offset.unsigned_abs()) {
                    break;
                }
                if v >= 1 && v <= bound {
                    out.insert(v);
                }
                s += 1;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalRow {
    pub case: String,
    #[serde(with = "text")]
    pub sum: MixedSum,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedForm>,
}

impl ExceptionalRow {
    /// The listed exceptional set intersected with `[1, bound]`.
    pub fn expected(&self, bound: u64) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self
            .exceptional
            .iter()
            .flatten()
            .copied()
            .filter(|&n| n <= bound)
            .collect();
        if let Some(cf) = &self.closed_form {
            out.extend(cf.expand(bound));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalTable {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub rows: Vec<ExceptionalRow>,
}

/// The bad set listed for one residue `a`, as printed (sign pairs allowed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub a: i64,
    pub bad: Vec<Vector>,
}

/// Congruence data for a pair of forms: `f`, `g`, modulus `d`, the listed
/// bad sets, and optionally a witness `T` with its eigenvectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(with = "text")]
    pub f: Form,
    #[serde(with = "text")]
    pub g: Form,
    /// The matrix exactly as printed, when it differs from `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_g: Option<String>,
    pub d: i64,
    pub checks: Vec<ResidueCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "text::option")]
    pub witness: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vector>>,
    /// Stated values `g(z)` for the eigenvectors `z`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded_values: Option<Vec<u64>>,
    /// Bound for checking the represented-set conclusion of the witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl CertificateRow {
    /// A short identifier: the case followed by the label, if any.
    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => format!("{} [{}]", self.case, l),
            None => self.case.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTable {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub rows: Vec<CertificateRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumList {
    pub id: String,
    pub title: String,
    #[serde(with = "text::list")]
    pub sums: Vec<MixedSum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerList {
    pub id: String,
    pub title: String,
    pub integers: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUniversalEntry {
    #[serde(with = "text")]
    pub sum: MixedSum,
    pub truant: u64,
}

/// Published totals. Map keys are arities written as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub id: String,
    pub title: String,
    pub candidates: std::collections::BTreeMap<String, usize>,
    pub proper_universal: std::collections::BTreeMap<String, usize>,
    pub total_proper_universal: usize,
    pub non_universal: std::collections::BTreeMap<String, Vec<NonUniversalEntry>>,
}

impl Counts {
    pub fn candidates_at(&self, arity: usize) -> Option<usize> {
        self.candidates.get(&arity.to_string()).copied()
    }

    pub fn proper_at(&self, arity: usize) -> Option<usize> {
        self.proper_universal.get(&arity.to_string()).copied()
    }
}

/// A parsed fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PaperFixture {
    Escalation(EscalationTable),
    Exceptional(ExceptionalTable),
    Certificates(CertificateTable),
    Sums(SumList),
    Integers(IntegerList),
    Counts(Counts),
}

impl PaperFixture {
    pub fn id(&self) -> &str {
        match self {
            PaperFixture::Escalation(t) => &t.id,
            PaperFixture::Exceptional(t) => &t.id,
            PaperFixture::Certificates(t) => &t.id,
            PaperFixture::Sums(t) => &t.id,
            PaperFixture::Integers(t) => &t.id,
            PaperFixture::Counts(t) => &t.id,
        }
    }

    pub fn row_count(&self) -> usize {
        match self {
            PaperFixture::Escalation(t) => t.rows.len(),
            PaperFixture::Exceptional(t) => t.rows.len(),
            PaperFixture::Certificates(t) => t.rows.len(),
            PaperFixture::Sums(t) => t.sums.len(),
            PaperFixture::Integers(t) => t.integers.len(),
            PaperFixture::Counts(_) => 1,
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(id: &str) -> Result<T> {
    serde_json::from_str(fixture_source(id)?).map_err(|e| Error::Fixture {
        id: id.to_string(),
        reason: e.to_string(),
    })
}

/// Loads and parses a fixture by id.
pub fn fixture(id: &str) -> Result<PaperFixture> {
    Ok(match id {
        "3.1" | "4.1" | "5.1" => PaperFixture::Escalation(parse(id)?),
        "5.2" => PaperFixture::Exceptional(parse(id)?),
        "4.3" | "text-certificates" => PaperFixture::Certificates(parse(id)?),
        "eq3.1" => PaperFixture::Sums(parse(id)?),
        "critical19" => PaperFixture::Integers(parse(id)?),
        "counts" => PaperFixture::Counts(parse(id)?),
        _ => return Err(Error::UnknownFixture(id.to_string())),
    })
}

fn wrong_kind(id: &str) -> Error {
    Error::Fixture {
        id: id.to_string(),
        reason: "fixture has a different kind".to_string(),
    }
}

pub fn escalation_table(id: &str) -> Result<EscalationTable> {
    match fixture(id)? {
        PaperFixture::Escalation(t) => Ok(t),
        _ => Err(wrong_kind(id)),
    }
}

pub fn certificate_table(id: &str) -> Result<CertificateTable> {
    match fixture(id)? {
        PaperFixture::Certificates(t) => Ok(t),
        _ => Err(wrong_kind(id)),
    }
}

pub fn exceptional_table() -> Result<ExceptionalTable> {
    parse("5.2")
}

pub fn ternary_list() -> Result<SumList> {
    parse("eq3.1")
}

pub fn critical_integers() -> Result<IntegerList> {
    parse("critical19")
}

pub fn counts() -> Result<Counts> {
    parse("counts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::represent::CRITICAL_INTEGERS;

    #[test]
    fn every_fixture_parses() {
        for id in fixture_ids() {
            let fx = fixture(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(fx.id(), id);
            assert!(fx.row_count() > 0);
        }
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert_eq!(fixture("4.2"), Err(Error::UnknownFixture("4.2".into())));
    }

    #[test]
    fn documented_examples() {
        let c = critical_integers().unwrap();
        assert_eq!(c.integers.len(), 19);
        assert_eq!(&c.integers[17..], &[60, 61]);
        assert_eq!(c.integers, CRITICAL_INTEGERS.to_vec());
        assert_eq!(ternary_list().unwrap().sums.len(), 6);
        let e = exceptional_table().unwrap();
        assert_eq!(e.rows.len(), 14);
        let row = e.rows.iter().find(|r| r.sum.to_string() == "1,2|5,5").unwrap();
        assert_eq!(row.expected(1000), BTreeSet::from([15, 20]));
    }

    #[test]
    fn closed_form_expansion() {
        let e = exceptional_table().unwrap();
        let row = e.rows.iter().find(|r| r.closed_form.is_some()).unwrap();
        assert_eq!(row.expected(1000), BTreeSet::from([20, 45, 70, 95, 620]));
    }

    #[test]
    fn ranges_expand() {
        let r: RangeSet = serde_json::from_str("[5, [11, 13]]").unwrap();
        assert_eq!(r.values(), BTreeSet::from([5, 11, 12, 13]));
        let row = &escalation_table("3.1").unwrap().rows[0];
        let kids = row.candidate_sums().unwrap();
        assert_eq!(kids.len(), 6);
        assert!(kids.contains(&"1,1|1".parse().unwrap()));
    }

    #[test]
    fn printed_asymmetric_matrix_is_kept() {
        let t = certificate_table("4.3").unwrap();
        let row = t.rows.iter().find(|r| r.printed_g.is_some()).unwrap();
        let printed = row.printed_g.as_deref().unwrap();
        assert!(printed.parse::<Form>().is_err());
        assert_eq!(row.g.det(), 315);
    }

    #[test]
    fn rows_round_trip() {
        let t = certificate_table("text-certificates").unwrap();
        let js = serde_json::to_string(&t).unwrap();
        let back: CertificateTable = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
    }
}
