//! Residue classes `R(g,d,a)`, transformation sets `R(f,g,d)` and the
//! good/bad partition that defines `g ≺_{d,a} f`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::count::{represented_set, vectors_of_norm};
use super::isometry::PmeReport;
use super::{Mat3, TernaryForm, Vec3};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// `R(g,d,a)`: residue vectors `v ∈ [0,d)³` with `v·M_g·vᵗ ≡ a (mod d)`.
pub fn congruence_classes<T: Scalar>(g: &TernaryForm<T>, d: T, a: T) -> Result<Vec<Vec3<T>>> {
    if d <= T::zero() {
        return Err(Error::ZeroModulus);
    }
    let a = a.mod_floor(&d);
    let mut out = Vec::new();
    let mut x = T::zero();
    while x < d {
        let mut y = T::zero();
        while y < d {
            let mut z = T::zero();
            while z < d {
                let v = [x, y, z];
                if g.eval(&v)?.mod_floor(&d) == a {
                    out.push(v);
                }
                z = z + T::one();
            }
            y = y + T::one();
        }
        x = x + T::one();
    }
    Ok(out)
}

/// `R(f,g,d)`: every integer `T` with `Tᵗ·M_f·T = d²·M_g`.
///
/// The `j`-th column must have `f`-norm `d²·g_jj`, so candidates come from a
/// finite short-vector list; pairs are then filtered by the off-diagonal
/// products.
pub fn transformation_set<T: Scalar>(
    f: &TernaryForm<T>,
    g: &TernaryForm<T>,
    d: T,
) -> Result<Vec<Mat3<T>>> {
    if d <= T::zero() {
        return Err(Error::ZeroModulus);
    }
    let d2 = scalar::mul(d, d)?;
    let target = g.gram().scale(d2)?;
    let columns: Vec<Vec<Vec3<T>>> = (0..3)
        .map(|j| Ok(vectors_of_norm(f, target.get(j, j).to_u64_checked()?)))
        .collect::<Result<_>>()?;

    let found: Vec<Vec<Mat3<T>>> = columns[0]
        .par_iter()
        .map(|t0| -> Result<Vec<Mat3<T>>> {
            let mut local = Vec::new();
            for t1 in &columns[1] {
                if f.bilinear(t0, t1)? != target.get(0, 1) {
                    continue;
                }
                for t2 in &columns[2] {
                    if f.bilinear(t0, t2)? == target.get(0, 2)
                        && f.bilinear(t1, t2)? == target.get(1, 2)
                    {
                        local.push(Mat3::from_columns([*t0, *t1, *t2]));
                    }
                }
            }
            Ok(local)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Mat3<T>> = found.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// True iff `T·v ≡ 0 (mod d)`, i.e. `(1/d)·v·Tᵗ` is integral.
pub(crate) fn transports<T: Scalar>(t: &Mat3<T>, v: &Vec3<T>, d: T) -> Result<bool> {
    Ok(t.apply(v)?.iter().all(|c| c.mod_floor(&d).is_zero()))
}

/// The partition of `R(g,d,a)` into good vectors `R_f(g,d,a)` and the bad
/// remainder `B_f(g,d,a)`, with an optional witness report attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CongruenceCertificate<T: Scalar> {
    pub f: TernaryForm<T>,
    pub g: TernaryForm<T>,
    pub d: T,
    pub a: T,
    pub residues: Vec<Vec3<T>>,
    pub good: Vec<Vec3<T>>,
    pub bad: Vec<Vec3<T>>,
    pub transformations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<PmeReport<T>>,
}

impl<T: Scalar> CongruenceCertificate<T> {
    /// `g ≺_{d,a} f`.
    pub fn precedes(&self) -> bool {
        self.bad.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

pub fn good_partition<T: Scalar>(
    f: &TernaryForm<T>,
    g: &TernaryForm<T>,
    d: T,
    a: T,
) -> Result<CongruenceCertificate<T>> {
    let residues = congruence_classes(g, d, a)?;
    let ts = transformation_set(f, g, d)?;
    let flags: Vec<bool> = residues
        .par_iter()
        .map(|v| {
            for t in &ts {
                if transports(t, v, d)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect::<Result<_>>()?;
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for (v, ok) in residues.iter().zip(flags) {
        if ok {
            good.push(*v);
        } else {
            bad.push(*v);
        }
    }
    Ok(CongruenceCertificate {
        f: *f,
        g: *g,
        d,
        a: a.mod_floor(&d),
        residues,
        good,
        bad,
        transformations: ts.len(),
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PrecOutcome<T: Scalar> {
    pub related: bool,
    pub bad: Vec<Vec3<T>>,
    pub spot_bound: u64,
    /// An `n <= spot_bound` with `n ≡ a (mod d)`, `n ∈ Q(g)` and `n ∉ Q(f)`.
    pub counterexample: Option<u64>,
}

impl<T: Scalar> PrecOutcome<T> {
    /// `g ≺_{d,a} f` and the represented-set inclusion agrees up to the spot bound.
    pub fn holds(&self) -> bool {
        self.related && self.counterexample.is_none()
    }
}

/// Decides `g ≺_{d,a} f`. When it holds, `S_{d,a} ∩ Q(g) ⊂ Q(f)` is also
/// checked on `[0, spot_bound]`.
pub fn prec_check<T: Scalar>(
    f: &TernaryForm<T>,
    g: &TernaryForm<T>,
    d: T,
    a: T,
    spot_bound: u64,
) -> Result<PrecOutcome<T>> {
    let cert = good_partition(f, g, d, a)?;
    let related = cert.precedes();
    let counterexample = if related {
        inclusion_counterexample(f, g, d.to_u64_checked()?, cert.a.to_u64_checked()?, spot_bound, &BTreeSet::new())
    } else {
        None
    };
    Ok(PrecOutcome {
        related,
        bad: cert.bad,
        spot_bound,
        counterexample,
    })
}

/// First `n <= bound` with `n ≡ a (mod d)`, `n ∈ Q(g) ∖ excluded` and `n ∉ Q(f)`.
pub(crate) fn inclusion_counterexample<T: Scalar>(
    f: &TernaryForm<T>,
    g: &TernaryForm<T>,
    d: u64,
    a: u64,
    bound: u64,
    excluded: &BTreeSet<u64>,
) -> Option<u64> {
    let qf: BTreeSet<u64> = represented_set(f, bound).into_iter().collect();
    represented_set(g, bound)
        .into_iter()
        .filter(|n| n % d == a && !excluded.contains(n))
        .find(|n| !qf.contains(n))
}
