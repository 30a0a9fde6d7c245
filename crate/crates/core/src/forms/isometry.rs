//! Witness matrices for the eigenvector criterion: an integral `T` with
//! `Tᵗ·M_g·T = d²·M_g` such that `(1/d)·T` has infinite order and carries
//! every bad residue into `ℤ³`. Then `S_{d,a} ∩ Q(g)` minus the values
//! `g(z)·s²` at primitive eigenvectors `z` of `T` lies in `Q(f)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::congruence::{good_partition, inclusion_counterexample, transports};
use super::{cross, Mat3, TernaryForm, Vec3};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Every finite-order rational isometry of a ternary space has order
/// 1, 2, 3, 4 or 6, so checking powers up to 24 is conclusive.
pub const ORDER_SEARCH_LIMIT: u32 = 24;

/// Returns false when `T^k = d^k·I` for some `1 <= k <= 24`.
pub fn has_infinite_order<T: Scalar>(t: &Mat3<T>, d: T) -> bool {
    let big = |x: T| BigInt::from(x.to_i128().expect("scalar fits in i128"));
    let base: Vec<Vec<BigInt>> = t.0.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect();
    let d = big(d);
    let mut power = base.clone();
    let mut dk = d.clone();
    for _ in 1..=ORDER_SEARCH_LIMIT {
        let is_scalar = (0..3).all(|i| {
            (0..3).all(|j| {
                if i == j {
                    power[i][j] == dk
                } else {
                    power[i][j].is_zero()
                }
            })
        });
        if is_scalar {
            return false;
        }
        let mut next = vec![vec![BigInt::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    next[i][j] += &power[i][k] * &base[k][j];
                }
            }
        }
        power = next;
        dk *= &d;
    }
    true
}

/// An integer eigenvalue of `T` and its eigenspace. `generator` is the
/// primitive integral eigenvector with positive leading entry when the
/// eigenspace is a line; larger eigenspaces are flagged instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Eigenspace<T: Scalar> {
    pub eigenvalue: T,
    pub dimension: usize,
    pub generator: Option<Vec3<T>>,
}

impl<T: Scalar> Eigenspace<T> {
    pub fn flagged(&self) -> bool {
        self.dimension >= 2
    }
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = 1i128;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            out.push(n / k);
        }
        k += 1;
    }
    out
}

fn primitive<T: Scalar>(v: Vec3<T>) -> Vec3<T> {
    let g = scalar::gcd3(&v);
    let mut w = v.map(|c| c / g);
    if let Some(lead) = w.iter().find(|c| !c.is_zero()) {
        if *lead < T::zero() {
            w = w.map(|c| -c);
        }
    }
    w
}

/// Integer eigenvalues of `T` (the rational roots of its monic integral
/// characteristic polynomial) with their eigenspaces, in increasing order.
pub fn eigenvectors<T: Scalar>(t: &Mat3<T>) -> Result<Vec<Eigenspace<T>>> {
    let (c2, c1, c0) = t.char_poly()?;
    let w = |x: T| x.to_i128().expect("scalar fits in i128");
    let (c2, c1, c0) = (w(c2), w(c1), w(c0));
    let eval = |l: i128| -> Option<i128> {
        let l2 = l.checked_mul(l)?;
        l2.checked_mul(l)?
            .checked_sub(c2.checked_mul(l2)?)?
            .checked_add(c1.checked_mul(l)?)?
            .checked_sub(c0)
    };
    let mut candidates: BTreeSet<i128> = BTreeSet::new();
    if c0 != 0 {
        candidates.extend(divisors(c0));
    } else {
        candidates.insert(0);
        if c1 != 0 {
            candidates.extend(divisors(c1));
        } else {
            candidates.insert(c2.abs());
        }
    }
    let candidates: BTreeSet<i128> = candidates.into_iter().flat_map(|l| [l, -l]).collect();

    let mut out = Vec::new();
    for l in candidates {
        if eval(l) != Some(0) {
            continue;
        }
        let lam = T::from_i128(l).ok_or(Error::Overflow)?;
        let a = t.sub(&Mat3::scalar(lam))?;
        let rows = a.0;
        let rank = if rows.iter().flatten().all(|x| x.is_zero()) {
            0
        } else {
            let crosses: Vec<Vec3<T>> = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .map(|&(i, j)| cross(&rows[i], &rows[j]))
                .collect::<Result<_>>()?;
            match crosses.iter().find(|c| c.iter().any(|x| !x.is_zero())) {
                Some(c) => {
                    out.push(Eigenspace {
                        eigenvalue: lam,
                        dimension: 1,
                        generator: Some(primitive(*c)),
                    });
                    continue;
                }
                None => 1,
            }
        };
        out.push(Eigenspace {
            eigenvalue: lam,
            dimension: 3 - rank,
            generator: None,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PmeReport<T: Scalar> {
    pub t: Mat3<T>,
    pub d: T,
    /// Condition (i): `(1/d)·T` has infinite order.
    pub infinite_order: bool,
    /// Condition (ii): `Tᵗ·M_g·T = d²·M_g`.
    pub preserves_g: bool,
    /// Condition (iii) fails on these bad residues.
    pub untransported: Vec<Vec3<T>>,
    pub bad: Vec<Vec3<T>>,
    pub eigenspaces: Vec<Eigenspace<T>>,
    /// Primitive integral eigenvectors, as `z, -z` pairs.
    pub eigenvectors: Vec<Vec3<T>>,
}

impl<T: Scalar> PmeReport<T> {
    pub fn verdict(&self) -> bool {
        self.infinite_order && self.preserves_g && self.untransported.is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.infinite_order {
            out.push("(i) (1/d)T has finite order".to_string());
        }
        if !self.preserves_g {
            out.push("(ii) TᵗM_gT != d²M_g".to_string());
        }
        if !self.untransported.is_empty() {
            out.push(format!(
                "(iii) (1/d)vTᵗ not integral for {} bad residue(s)",
                self.untransported.len()
            ));
        }
        out
    }

    pub fn has_flagged_eigenspace(&self) -> bool {
        self.eigenspaces.iter().any(Eigenspace::flagged)
    }
}

/// Checks conditions (i) to (iii) for `T` against an already computed bad set.
pub fn pme_check_against<T: Scalar>(
    g: &TernaryForm<T>,
    d: T,
    t: &Mat3<T>,
    bad: &[Vec3<T>],
) -> Result<PmeReport<T>> {
    if d <= T::zero() {
        return Err(Error::ZeroModulus);
    }
    let preserves_g = t.congruent(g.gram())? == g.gram().scale(scalar::mul(d, d)?)?;
    let mut untransported = Vec::new();
    for v in bad {
        if !transports(t, v, d)? {
            untransported.push(*v);
        }
    }
    let eigenspaces = eigenvectors(t)?;
    let eigenvectors = eigenspaces
        .iter()
        .filter_map(|e| e.generator)
        .flat_map(|z| [z, z.map(|c| -c)])
        .collect();
    Ok(PmeReport {
        t: *t,
        d,
        infinite_order: has_infinite_order(t, d),
        preserves_g,
        untransported,
        bad: bad.to_vec(),
        eigenspaces,
        eigenvectors,
    })
}

/// Computes `B_f(g,d,a)` and checks conditions (i) to (iii) for `T`.
pub fn pme_check<T: Scalar>(
    f: &TernaryForm<T>,
    g: &TernaryForm<T>,
    d: T,
    a: T,
    t: &Mat3<T>,
) -> Result<PmeReport<T>> {
    let cert = good_partition(f, g, d, a)?;
    pme_check_against(g, d, t, &cert.bad)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConclusionOutcome {
    pub bound: u64,
    /// `g(z)` for the primitive eigenvectors `z`.
    pub eigenvalues_of_g: Vec<u64>,
    pub counterexample: Option<u64>,
}

impl ConclusionOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Verifies `S_{d,a} ∩ Q(g) ∖ {g(z)·s²} ⊂ Q(f)` on `[0, bound]`.
/// The witness must satisfy conditions (i) to (iii).
pub fn pme_conclusion_check<T: Scalar>(
    f: &TernaryForm<T>,
    g: &TernaryForm<T>,
    d: T,
    a: T,
    t: &Mat3<T>,
    bound: u64,
) -> Result<ConclusionOutcome> {
    let report = pme_check(f, g, d, a, t)?;
    if !report.verdict() {
        return Err(Error::WitnessRejected(report.failures().join("; ")));
    }
    let mut gz: Vec<u64> = report
        .eigenvectors
        .iter()
        .map(|z| g.eval(z).and_then(|v| v.to_u64_checked()))
        .collect::<Result<_>>()?;
    gz.sort_unstable();
    gz.dedup();
    let mut excluded = BTreeSet::new();
    for &v in &gz {
        let mut s = 1u64;
        while v * s * s <= bound {
            excluded.insert(v * s * s);
            s += 1;
        }
    }
    excluded.insert(0);
    let d = d.to_u64_checked()?;
    let a = a.mod_floor(&T::from_u64_checked(d)?).to_u64_checked()?;
    Ok(ConclusionOutcome {
        bound,
        eigenvalues_of_g: gz,
        counterexample: inclusion_counterexample(f, g, d, a, bound, &excluded),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(s: &str) -> Mat3<i64> {
        s.parse().unwrap()
    }

    #[test]
    fn finite_order_detected() {
        assert!(!has_infinite_order(&Mat3::scalar(5i64), 5));
        assert!(!has_infinite_order(&mat("0,-1,0;1,0,0;0,0,1"), 1));
        // order 6 rotation scaled by 2: (x,y,z) -> (y, z, x) composed with a sign
        assert!(!has_infinite_order(&mat("0,0,-2;-2,0,0;0,-2,0"), 2));
        assert!(has_infinite_order(&mat("5,0,0;0,4,-3;0,3,4"), 5));
        assert!(has_infinite_order(&mat("9,20,0;-8,1,0;0,0,13"), 13));
    }

    #[test]
    fn eigen_data() {
        let es = eigenvectors(&mat("5,0,0;0,4,-3;0,3,4")).unwrap();
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].eigenvalue, 5);
        assert_eq!(es[0].generator, Some([1, 0, 0]));

        let es = eigenvectors(&mat("2,2,3;-1,-1,3;-1,2,0")).unwrap();
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].eigenvalue, -3);
        assert_eq!(es[0].generator, Some([0, 3, -2]));

        let es = eigenvectors(&Mat3::scalar(4i64)).unwrap();
        assert_eq!(es, vec![Eigenspace { eigenvalue: 4, dimension: 3, generator: None }]);

        let es = eigenvectors(&mat("1,0,0;0,1,0;0,0,2")).unwrap();
        assert!(es[0].flagged());
        assert_eq!(es[1].generator, Some([0, 0, 1]));

        let es = eigenvectors(&mat("0,0,0;0,0,0;0,0,3")).unwrap();
        assert_eq!(es[0].eigenvalue, 0);
        assert_eq!(es[0].dimension, 2);
    }

    #[test]
    fn scalar_witness_is_rejected() {
        let g: TernaryForm<i64> = "diag:1,1,1".parse().unwrap();
        let r = pme_check(&g, &g, 3, 0, &Mat3::scalar(3)).unwrap();
        assert!(!r.infinite_order);
        assert!(r.preserves_g);
        assert!(!r.verdict());
        assert!(matches!(
            pme_conclusion_check(&g, &g, 3, 0, &Mat3::scalar(3), 50),
            Err(Error::WitnessRejected(_))
        ));
    }

    proptest! {
        #[test]
        fn generators_are_eigenvectors(entries in prop::array::uniform9(-6i64..7)) {
            let t = Mat3([
                [entries[0], entries[1], entries[2]],
                [entries[3], entries[4], entries[5]],
                [entries[6], entries[7], entries[8]],
            ]);
            for e in eigenvectors(&t).unwrap() {
                if let Some(z) = e.generator {
                    prop_assert_eq!(t.apply(&z).unwrap(), z.map(|c| c * e.eigenvalue));
                    prop_assert_eq!(crate::scalar::gcd3(&z), 1);
                }
            }
        }

        #[test]
        fn scaled_identity_powers_are_finite(d in 1i64..20) {
            prop_assert!(!has_infinite_order(&Mat3::scalar(d), d));
            prop_assert!(!has_infinite_order(&Mat3::scalar(-d), d));
        }
    }
}
