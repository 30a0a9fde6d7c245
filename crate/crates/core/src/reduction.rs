//! The congruence-restricted form attached to a mixed sum, and the reduction
//! gate used before attacking a sum through ternary forms.
//!
//! Multiplying by 3 and completing the square turns `Φ = N` into
//!
//! ```text
//! 3·Σ a_i x_i² + Σ b_j y_j² = 3N + Σ b_j,   with every y_j ≢ 0 (mod 3)
//! ```
//!
//! because `3·P_8(y) + 1 = (3y − 1)²`. [`solvable_with_unit_roots`] decides the
//! right-hand side directly, independently of the polygonal-value search.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixed_sum::MixedSum;
use crate::polygonal::Order;

/// True iff `3·Σ a_i x_i² + Σ b_j y_j² = target` has a solution with no `y_j`
/// divisible by 3.
pub fn solvable_with_unit_roots(phi: &MixedSum, target: u64) -> bool {
    let mut levels: Vec<(u64, Vec<u64>)> = phi
        .terms()
        .map(|t| {
            let (weight, allowed): (u64, fn(u64) -> bool) = match t.order {
                Order::Square => (3 * t.coeff, |_| true),
                Order::Octagonal => (t.coeff, |y| y % 3 != 0),
            };
            let mut vals = Vec::new();
            let mut y = 0u64;
            while let Some(v) = (y * y).checked_mul(weight).filter(|&v| v <= target) {
                if allowed(y) {
                    vals.push(v);
                }
                y += 1;
            }
            (weight, vals)
        })
        .collect();
    levels.sort_by(|a, b| b.0.cmp(&a.0));
    let lists: Vec<Vec<u64>> = levels.into_iter().map(|(_, v)| v).collect();
    let mut failed = HashSet::new();
    search(&lists, 0, target, &mut failed)
}

fn search(lists: &[Vec<u64>], level: usize, rem: u64, failed: &mut HashSet<(usize, u64)>) -> bool {
    if level == lists.len() {
        return rem == 0;
    }
    if failed.contains(&(level, rem)) {
        return false;
    }
    let end = lists[level].partition_point(|&v| v <= rem);
    for &v in lists[level][..end].iter().rev() {
        if search(lists, level + 1, rem - v, failed) {
            return true;
        }
    }
    failed.insert((level, rem));
    false
}

/// `phi` represents `n` iff the congruence-restricted equation at `3n + Σ b_j` is solvable.
pub fn represented_via_unit_roots(phi: &MixedSum, n: u64) -> bool {
    solvable_with_unit_roots(phi, 3 * n + phi.beta_sum())
}

/// The exceptional residues `E` for an octagonal coefficient sum `S` and their exponents:
/// `E = {1 <= n < S : n ≡ S (mod 3)}` and `nu(n)` is the positive integer with
/// `4^(nu-1)·n < S <= 4^nu·n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPlan {
    pub beta_sum: u64,
    /// `n -> nu(n)` for every `n` in `E`.
    pub nu: BTreeMap<u64, u32>,
}

impl ReductionPlan {
    pub fn exceptions(&self) -> impl Iterator<Item = u64> + '_ {
        self.nu.keys().copied()
    }

    /// `4^nu(n)·n` for each `n` in `E`.
    pub fn targets(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.nu.iter().map(|(&n, &k)| (n, 4u64.pow(k) * n))
    }
}

pub fn reduction_plan(betas: &[u64]) -> Result<ReductionPlan> {
    if betas.is_empty() {
        return Err(Error::NoOctagonals);
    }
    let beta_sum = betas
        .iter()
        .try_fold(0u64, |acc, &b| acc.checked_add(b))
        .ok_or(Error::Overflow)?;
    let mut nu = BTreeMap::new();
    for n in (1..beta_sum).filter(|n| n % 3 == beta_sum % 3) {
        let mut k = 1u32;
        let mut scaled = 4 * n;
        while scaled < beta_sum {
            k += 1;
            scaled *= 4;
        }
        nu.insert(n, k);
    }
    Ok(ReductionPlan { beta_sum, nu })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutcome {
    pub plan: ReductionPlan,
    /// Members of `E` whose target `4^nu(n)·n` is not reached.
    pub failing: Vec<u64>,
}

impl ReductionOutcome {
    pub fn passed(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Checks, by exhaustive search, that `3·Σ a_i x_i² + Σ b_j y_j² = 4^nu(n)·n`
/// is solvable with all `y_j ≢ 0 (mod 3)` for every `n` in `E`. When it is,
/// universality only has to be checked at `N` with `3N + Σ b_j ≢ 0 (mod 4)`.
pub fn reduction_check(phi: &MixedSum) -> Result<ReductionOutcome> {
    let plan = reduction_plan(phi.octagonals())?;
    let failing = plan
        .targets()
        .filter(|&(_, target)| !solvable_with_unit_roots(phi, target))
        .map(|(n, _)| n)
        .collect();
    Ok(ReductionOutcome { plan, failing })
}
