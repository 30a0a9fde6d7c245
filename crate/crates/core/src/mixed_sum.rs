//! The mixed sum `a_1 P_4(x_1) + ... + a_u P_4(x_u) + b_1 P_8(y_1) + ... + b_v P_8(y_v)`.
//!
//! A sum is identified by its two sorted coefficient lists. Textual notation
//! is `squares|octagonals`, each side a comma list that may be empty:
//! `1,2,5|5,5`, `|1,1,2`, `1,1,1|`. The empty sum is `|`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygonal::Order;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSum")]
pub struct MixedSum {
    squares: Vec<u64>,
    octagonals: Vec<u64>,
}

#[derive(Deserialize)]
struct RawSum {
    #[serde(default)]
    squares: Vec<u64>,
    #[serde(default)]
    octagonals: Vec<u64>,
}

impl TryFrom<RawSum> for MixedSum {
    type Error = Error;

    fn try_from(raw: RawSum) -> Result<Self> {
        MixedSum::new(raw.squares, raw.octagonals)
    }
}

/// Sums are ordered by their notation strings, so every sorted listing
/// matches a plain text sort of the printed sums.
impl Ord for MixedSum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for MixedSum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// One term of a sum: its polygonal order and coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub order: Order,
    pub coeff: u64,
}

impl MixedSum {
    /// Builds a sum from coefficient lists in any order. Zero coefficients are rejected.
    pub fn new(mut squares: Vec<u64>, mut octagonals: Vec<u64>) -> Result<Self> {
        if squares.iter().chain(&octagonals).any(|&c| c == 0) {
            return Err(Error::SumSyntax {
                input: format!("{squares:?}|{octagonals:?}"),
                reason: "coefficients must be positive".into(),
            });
        }
        squares.sort_unstable();
        octagonals.sort_unstable();
        Ok(MixedSum { squares, octagonals })
    }

    pub fn empty() -> Self {
        MixedSum::default()
    }

    pub fn squares(&self) -> &[u64] {
        &self.squares
    }

    pub fn octagonals(&self) -> &[u64] {
        &self.octagonals
    }

    pub fn arity(&self) -> usize {
        self.squares.len() + self.octagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arity() == 0
    }

    pub fn beta_sum(&self) -> u64 {
        self.octagonals.iter().sum()
    }

    /// Terms in notation order: squares first, then octagonals.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        let sq = self.squares.iter().map(|&coeff| Term {
            order: Order::Square,
            coeff,
        });
        let oc = self.octagonals.iter().map(|&coeff| Term {
            order: Order::Octagonal,
            coeff,
        });
        sq.chain(oc)
    }

    pub fn with_term(&self, order: Order, coeff: u64) -> Result<Self> {
        let mut squares = self.squares.clone();
        let mut octagonals = self.octagonals.clone();
        match order {
            Order::Square => squares.push(coeff),
            Order::Octagonal => octagonals.push(coeff),
        }
        MixedSum::new(squares, octagonals)
    }

    /// Distinct subsums obtained by deleting exactly one term.
    pub fn leave_one_out(&self) -> Vec<MixedSum> {
        let mut out = Vec::with_capacity(self.arity());
        for i in 0..self.squares.len() {
            if i > 0 && self.squares[i] == self.squares[i - 1] {
                continue;
            }
            let mut sq = self.squares.clone();
            sq.remove(i);
            out.push(MixedSum {
                squares: sq,
                octagonals: self.octagonals.clone(),
            });
        }
        for i in 0..self.octagonals.len() {
            if i > 0 && self.octagonals[i] == self.octagonals[i - 1] {
                continue;
            }
            let mut oc = self.octagonals.clone();
            oc.remove(i);
            out.push(MixedSum {
                squares: self.squares.clone(),
                octagonals: oc,
            });
        }
        out
    }

    /// True when both coefficient multisets of `self` are contained in `other`'s.
    pub fn is_subsum_of(&self, other: &MixedSum) -> bool {
        fn sub_multiset(a: &[u64], b: &[u64]) -> bool {
            let mut j = 0;
            for &x in a {
                while j < b.len() && b[j] < x {
                    j += 1;
                }
                if j == b.len() || b[j] != x {
                    return false;
                }
                j += 1;
            }
            true
        }
        sub_multiset(&self.squares, &other.squares)
            && sub_multiset(&self.octagonals, &other.octagonals)
    }

    pub fn notation(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MixedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| {
            v.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}", join(&self.squares), join(&self.octagonals))
    }
}

impl FromStr for MixedSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::SumSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (left, right) = s
            .trim()
            .split_once('|')
            .ok_or_else(|| err("expected `squares|octagonals`"))?;
        if right.contains('|') {
            return Err(err("more than one `|`"));
        }
        let parse_side = |side: &str| -> Result<Vec<u64>> {
            let side = side.trim();
            if side.is_empty() {
                return Ok(Vec::new());
            }
            side.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u64>()
                        .map_err(|_| err(&format!("bad coefficient {:?}", tok.trim())))
                })
                .collect()
        };
        MixedSum::new(parse_side(left)?, parse_side(right)?).map_err(|_| err("coefficients must be positive"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sum(s: &str) -> MixedSum {
        s.parse().unwrap()
    }

    #[test]
    fn parses_notation() {
        let phi = sum("5,1,2|5,5");
        assert_eq!(phi.squares(), &[1, 2, 5]);
        assert_eq!(phi.octagonals(), &[5, 5]);
        assert_eq!(phi.to_string(), "1,2,5|5,5");
        assert_eq!(sum("|1,1,2").squares(), &[] as &[u64]);
        assert_eq!(sum("1,1,1|").octagonals(), &[] as &[u64]);
        assert!(sum("|").is_empty());
        assert_eq!(sum(" 1, 2 | 3 ").to_string(), "1,2|3");
    }

    #[test]
    fn rejects_bad_notation() {
        for bad in ["", "1,2", "1|2|3", "0|1", "a|", "1,,2|", "-1|"] {
            assert!(bad.parse::<MixedSum>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn json_shape() {
        let phi = sum("1,2|5");
        let js = serde_json::to_string(&phi).unwrap();
        assert_eq!(js, r#"{"squares":[1,2],"octagonals":[5]}"#);
        let back: MixedSum = serde_json::from_str(r#"{"squares":[2,1],"octagonals":[5]}"#).unwrap();
        assert_eq!(back, phi);
        assert!(serde_json::from_str::<MixedSum>(r#"{"squares":[0],"octagonals":[]}"#).is_err());
    }

    #[test]
    fn leave_one_out_dedups_repeated_coefficients() {
        let subs = sum("1,1,2|5,5").leave_one_out();
        let names: Vec<String> = subs.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["1,2|5,5", "1,1|5,5", "1,1,2|5"]);
        assert!(MixedSum::empty().leave_one_out().is_empty());
    }

    #[test]
    fn subsum_relation() {
        assert!(sum("1|5").is_subsum_of(&sum("1,2|5,5")));
        assert!(!sum("1,1|").is_subsum_of(&sum("1,2|5,5")));
        assert!(MixedSum::empty().is_subsum_of(&sum("3|")));
    }

    proptest! {
        #[test]
        fn notation_round_trips(sq in prop::collection::vec(1u64..100, 0..5),
                                oc in prop::collection::vec(1u64..100, 0..5)) {
            let phi = MixedSum::new(sq, oc).unwrap();
            prop_assert_eq!(phi.to_string().parse::<MixedSum>().unwrap(), phi.clone());
            let js = serde_json::to_string(&phi).unwrap();
            prop_assert_eq!(serde_json::from_str::<MixedSum>(&js).unwrap(), phi);
        }
    }
}
