//! The representation-count identity
//! `r(n,⟨1,3,3⟩) − r(n,⟨1,27,27⟩) = 4·r(n,M_2) + 4·r(n,M_3)` for `n ≡ 1 (mod 3)`,
//! checked numerically from theta series.

use serde::{Deserialize, Serialize};

use super::count::theta_series;
use super::TernaryForm;

/// `(⟨1,3,3⟩, ⟨1,27,27⟩, M_2, M_3)`.
pub fn siegel_forms() -> [TernaryForm<i64>; 4] {
    let f = |rows| TernaryForm::from_i64(rows).expect("fixed forms are positive definite");
    [
        f([[1, 0, 0], [0, 3, 0], [0, 0, 3]]),
        f([[1, 0, 0], [0, 27, 0], [0, 0, 27]]),
        f([[4, 1, 0], [1, 7, 0], [0, 0, 27]]),
        f([[7, -3, 2], [-3, 9, 3], [2, 3, 16]]),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiegelFailure {
    pub n: u64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiegelOutcome {
    pub bound: u64,
    pub checked: usize,
    pub first_failure: Option<SiegelFailure>,
}

impl SiegelOutcome {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn siegel_identity_check(bound: u64) -> SiegelOutcome {
    let theta = siegel_forms().map(|f| theta_series(&f, bound));
    let mut checked = 0;
    for n in (1..=bound).step_by(3) {
        let r = |i: usize| theta[i][n as usize] as i64;
        let lhs = r(0) - r(1);
        let rhs = 4 * r(2) + 4 * r(3);
        checked += 1;
        if lhs != rhs {
            return SiegelOutcome {
                bound,
                checked,
                first_failure: Some(SiegelFailure { n, lhs, rhs }),
            };
        }
    }
    SiegelOutcome {
        bound,
        checked,
        first_failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::rep_count;

    #[test]
    fn small_cases() {
        let [a, b, m2, m3] = siegel_forms();
        assert_eq!((rep_count(1, &a), rep_count(1, &b)), (2, 2));
        assert_eq!((rep_count(1, &m2), rep_count(1, &m3)), (0, 0));
        assert_eq!((rep_count(4, &a), rep_count(4, &b)), (10, 2));
        assert_eq!((rep_count(4, &m2), rep_count(4, &m3)), (2, 0));
    }

    #[test]
    fn identity_holds_on_a_short_range() {
        let out = siegel_identity_check(1500);
        assert!(out.holds(), "{:?}", out.first_failure);
        assert_eq!(out.checked, 500);
    }
}
