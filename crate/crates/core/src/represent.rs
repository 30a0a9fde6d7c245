//! Deciding which integers a mixed sum represents.
//!
//! Two independent routes live here. [`Decider`] answers single queries by
//! depth-first search over per-term value lists with a failure cache keyed on
//! `(term, remainder)`. [`RepresentedSet`] computes every represented value up
//! to a bound at once as an iterated sumset over a bitset, which is what the
//! truant and exceptional-set scans use.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixed_sum::{MixedSum, Term};
use crate::polygonal::Order;

/// A sum is universal iff it represents all of these.
pub const CRITICAL_INTEGERS: [u64; 19] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14, 15, 18, 20, 30, 60, 61,
];

/// Smallest bound accepted by [`truant`].
pub const MIN_BOUND: u64 = 61;

/// Memoized depth-first decision procedure for one sum and targets up to `limit`.
///
/// Terms are visited by descending coefficient and each term's values are tried
/// from the largest down. A `(term, remainder)` pair that failed once is never
/// expanded again, whatever the original target was.
#[derive(Debug, Clone)]
pub struct Decider {
    limit: u64,
    // ascending scaled values per level
    levels: Vec<Vec<u64>>,
    failed: HashSet<(usize, u64)>,
}

impl Decider {
    pub fn new(phi: &MixedSum, limit: u64) -> Self {
        let mut terms: Vec<Term> = phi.terms().collect();
        terms.sort_by(|a, b| b.coeff.cmp(&a.coeff));
        Self::from_terms(&terms, limit)
    }

    fn from_terms(terms: &[Term], limit: u64) -> Self {
        let levels = terms.iter().map(|t| scaled_values(*t, limit)).collect();
        Decider {
            limit,
            levels,
            failed: HashSet::new(),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Whether `n` is represented. Panics if `n` exceeds the construction limit.
    pub fn represents(&mut self, n: u64) -> bool {
        assert!(n <= self.limit, "target {n} above decider limit {}", self.limit);
        self.solve(0, n)
    }

    fn solve(&mut self, level: usize, rem: u64) -> bool {
        let depth = self.levels.len();
        if level == depth {
            return rem == 0;
        }
        if level + 1 == depth {
            return self.levels[level].binary_search(&rem).is_ok();
        }
        if self.failed.contains(&(level, rem)) {
            return false;
        }
        let end = self.levels[level].partition_point(|&v| v <= rem);
        for idx in (0..end).rev() {
            let v = self.levels[level][idx];
            if self.solve(level + 1, rem - v) {
                return true;
            }
        }
        self.failed.insert((level, rem));
        false
    }
}

fn scaled_values(term: Term, limit: u64) -> Vec<u64> {
    term.order
        .values_up_to(limit / term.coeff)
        .into_iter()
        .map(|v| v * term.coeff)
        .collect()
}

/// True iff `phi` represents `n`.
pub fn is_represented(phi: &MixedSum, n: u64) -> bool {
    Decider::new(phi, n).represents(n)
}

/// True iff `phi` represents each of [`CRITICAL_INTEGERS`].
pub fn criterion_universal(phi: &MixedSum) -> bool {
    let mut decider = Decider::new(phi, MIN_BOUND);
    CRITICAL_INTEGERS.iter().all(|&n| decider.represents(n))
}

/// Critical integers `phi` misses, in increasing order.
pub fn criterion_failures(phi: &MixedSum) -> Vec<u64> {
    let mut decider = Decider::new(phi, MIN_BOUND);
    CRITICAL_INTEGERS
        .iter()
        .copied()
        .filter(|&n| !decider.represents(n))
        .collect()
}

/// Integer arguments realising a representation, in notation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub squares: Vec<i64>,
    pub octagonals: Vec<i64>,
}

impl Witness {
    pub fn evaluate(&self, phi: &MixedSum) -> Result<i64> {
        let args = self.squares.iter().chain(&self.octagonals);
        phi.terms().zip(args).try_fold(0i64, |acc, (term, &x)| {
            let c = i64::try_from(term.coeff).map_err(|_| Error::Overflow)?;
            let v = term.order.value(x)?.checked_mul(c).ok_or(Error::Overflow)?;
            acc.checked_add(v).ok_or(Error::Overflow)
        })
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "x=({}) y=({})", join(&self.squares), join(&self.octagonals))
    }
}

/// The witness whose argument absolute values are lexicographically smallest
/// (squares first, then octagonals; `k` before `-k`), or `None`.
pub fn witness(phi: &MixedSum, n: u64) -> Option<Witness> {
    let terms: Vec<Term> = phi.terms().collect();
    // suffixes[i] decides the terms after position i
    let mut suffixes: Vec<Decider> = (0..terms.len())
        .map(|i| Decider::from_terms(&terms[i + 1..], n))
        .collect();
    let mut rem = n;
    let mut args = Vec::with_capacity(terms.len());
    for (i, term) in terms.iter().enumerate() {
        let mut chosen = None;
        'search: for k in 0i64.. {
            let mut any_fits = false;
            let signs: &[i64] = match (term.order, k) {
                (_, 0) | (Order::Square, _) => &[1],
                (Order::Octagonal, _) => &[1, -1],
            };
            for &s in signs {
                let x = s * k;
                let v = term.order.value(x).ok()? as u64;
                let Some(scaled) = v.checked_mul(term.coeff).filter(|&sv| sv <= rem) else {
                    continue;
                };
                any_fits = true;
                if suffixes[i].represents(rem - scaled) {
                    chosen = Some((x, scaled));
                    break 'search;
                }
            }
            if !any_fits {
                break;
            }
        }
        let (x, scaled) = chosen?;
        rem -= scaled;
        args.push(x);
    }
    if rem != 0 {
        return None;
    }
    let u = phi.squares().len();
    Some(Witness {
        squares: args[..u].to_vec(),
        octagonals: args[u..].to_vec(),
    })
}

/// Every value in `0..=bound` represented by a sum, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentedSet {
    bound: u64,
    words: Vec<u64>,
}

impl RepresentedSet {
    pub fn new(phi: &MixedSum, bound: u64) -> Self {
        let len = (bound / 64 + 1) as usize;
        let mut cur = vec![0u64; len];
        cur[0] = 1;
        let mut terms: Vec<Term> = phi.terms().collect();
        // big coefficients first keeps the early sets sparse
        terms.sort_by(|a, b| b.coeff.cmp(&a.coeff));
        for term in terms {
            let mut next = vec![0u64; len];
            for v in scaled_values(term, bound) {
                shift_or(&mut next, &cur, v as usize);
            }
            cur = next;
        }
        let mut set = RepresentedSet { bound, words: cur };
        set.clear_tail();
        set
    }

    fn clear_tail(&mut self) {
        let used = (self.bound % 64) + 1;
        if used < 64 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.bound && (self.words[(n / 64) as usize] >> (n % 64)) & 1 == 1
    }

    /// Positive integers up to the bound that are not represented.
    pub fn missing(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.bound).filter(move |&n| !self.contains(n))
    }

    pub fn first_missing(&self) -> Option<u64> {
        for (i, &w) in self.words.iter().enumerate() {
            let mut holes = !w;
            if i == 0 {
                holes &= !1; // 0 is not a candidate truant
            }
            if holes != 0 {
                let n = i as u64 * 64 + holes.trailing_zeros() as u64;
                return (n <= self.bound).then_some(n);
            }
        }
        None
    }
}

// dst |= src << shift, truncated to dst's length
fn shift_or(dst: &mut [u64], src: &[u64], shift: usize) {
    let word = shift / 64;
    let bit = shift % 64;
    let at = |j: usize| src.get(j).copied().unwrap_or(0);
    for i in word..dst.len() {
        let j = i - word;
        dst[i] |= if bit == 0 {
            at(j)
        } else {
            let carry = if j == 0 { 0 } else { at(j - 1) >> (64 - bit) };
            (at(j) << bit) | carry
        };
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Universal,
    NonUniversal,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Universal => "universal",
            Verdict::NonUniversal => "non-universal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruantReport {
    pub verdict: Verdict,
    pub truant: Option<u64>,
    pub searched_bound: u64,
    pub criterion_passed: bool,
}

impl TruantReport {
    pub fn is_universal(&self) -> bool {
        self.verdict == Verdict::Universal
    }
}

/// Scans `1..=bound` for the least unrepresented integer.
///
/// A sum with no truant up to `bound` is reported universal only when the
/// 19-integer criterion agrees; otherwise the outcome is
/// [`Error::Indeterminate`]. A truant found for a sum that passes the
/// criterion is a [`Error::CriterionMismatch`].
pub fn truant(phi: &MixedSum, bound: u64) -> Result<TruantReport> {
    if bound < MIN_BOUND {
        return Err(Error::BoundTooSmall(bound));
    }
    let criterion = criterion_universal(phi);
    let found = RepresentedSet::new(phi, bound).first_missing();
    match (found, criterion) {
        (Some(t), false) => Ok(TruantReport {
            verdict: Verdict::NonUniversal,
            truant: Some(t),
            searched_bound: bound,
            criterion_passed: false,
        }),
        (None, true) => Ok(TruantReport {
            verdict: Verdict::Universal,
            truant: None,
            searched_bound: bound,
            criterion_passed: true,
        }),
        (None, false) => Err(Error::Indeterminate {
            sum: phi.clone(),
            bound,
        }),
        (Some(t), true) => Err(Error::CriterionMismatch {
            sum: phi.clone(),
            criterion: true,
            truant: Some(t),
            bound,
        }),
    }
}

/// All positive `n <= bound` that `phi` does not represent.
pub fn exceptional_set(phi: &MixedSum, bound: u64) -> Vec<u64> {
    RepresentedSet::new(phi, bound).missing().collect()
}
