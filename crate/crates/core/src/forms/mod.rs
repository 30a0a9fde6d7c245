//! Positive definite integral ternary quadratic forms and the congruence
//! machinery used to compare two forms in the same genus.
//!
//! A form is stored by its Gram matrix `M_f = (a_ij)` and evaluates as
//! `f(v) = Σ a_ij v_i v_j`, so an off-diagonal entry contributes
//! `2·a_ij·v_i·v_j`.

mod congruence;
mod count;
mod isometry;
mod matrix;
mod siegel;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub use congruence::{
    congruence_classes, good_partition, prec_check, transformation_set, CongruenceCertificate,
    PrecOutcome,
};
pub use count::{for_each_vector, rep_count, represented_set, theta_series, vectors_of_norm};
pub use isometry::{
    eigenvectors, has_infinite_order, pme_check, pme_check_against, pme_conclusion_check,
    ConclusionOutcome,
    Eigenspace, PmeReport,
};
pub use matrix::{cross, format_vec, Mat3, Vec3};
pub use siegel::{siegel_forms, siegel_identity_check, SiegelOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Mat3<T>", into = "Mat3<T>", bound = "")]
pub struct TernaryForm<T: Scalar> {
    gram: Mat3<T>,
}

impl<T: Scalar> TryFrom<Mat3<T>> for TernaryForm<T> {
    type Error = Error;

    fn try_from(m: Mat3<T>) -> Result<Self> {
        TernaryForm::new(m)
    }
}

impl<T: Scalar> From<TernaryForm<T>> for Mat3<T> {
    fn from(f: TernaryForm<T>) -> Self {
        f.gram
    }
}

impl<T: Scalar> TernaryForm<T> {
    /// Validates symmetry and positive definiteness (leading minors positive).
    pub fn new(gram: Mat3<T>) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let m1 = gram.get(0, 0);
        let m2 = gram.minor([0, 1], [0, 1])?;
        let m3 = gram.det()?;
        if m1 <= T::zero() || m2 <= T::zero() || m3 <= T::zero() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(TernaryForm { gram })
    }

    /// The diagonal form `⟨a, b, c⟩`.
    pub fn diag(a: T, b: T, c: T) -> Result<Self> {
        let z = T::zero();
        Self::new(Mat3([[a, z, z], [z, b, z], [z, z, c]]))
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(Mat3::from_i64(rows)?)
    }

    pub fn gram(&self) -> &Mat3<T> {
        &self.gram
    }

    pub fn det(&self) -> T {
        self.gram.det().expect("determinant was computed at construction")
    }

    pub fn is_diagonal(&self) -> bool {
        let m = &self.gram.0;
        m[0][1].is_zero() && m[0][2].is_zero() && m[1][2].is_zero()
    }

    /// `v·M_f·vᵗ`.
    pub fn eval(&self, v: &Vec3<T>) -> Result<T> {
        self.bilinear(v, v)
    }

    /// `u·M_f·wᵗ`.
    pub fn bilinear(&self, u: &Vec3<T>, w: &Vec3<T>) -> Result<T> {
        let mw = self.gram.apply(w)?;
        let mut acc = T::zero();
        for i in 0..3 {
            acc = scalar::add(acc, scalar::mul(u[i], mw[i])?)?;
        }
        Ok(acc)
    }

    /// Gram entries widened to `i128` for the counting kernels.
    pub(crate) fn wide(&self) -> [[i128; 3]; 3] {
        let mut out = [[0i128; 3]; 3];
        for (i, row) in self.gram.0.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[i][j] = x.to_i128().expect("every scalar fits in i128");
            }
        }
        out
    }
}

/// Evaluates `f` at `v`.
pub fn eval_form<T: Scalar>(f: &TernaryForm<T>, v: &Vec3<T>) -> Result<T> {
    f.eval(v)
}

impl<T: Scalar> fmt::Display for TernaryForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.gram.0;
        if self.is_diagonal() {
            write!(f, "diag:{},{},{}", m[0][0], m[1][1], m[2][2])
        } else {
            write!(f, "gram:{}", self.gram)
        }
    }
}

/// `diag:a,b,c`, `gram:` followed by three full rows, or `gram:` followed by
/// the upper triangle `a11,a12,a13;a22,a23;a33`.
impl<T: Scalar> FromStr for TernaryForm<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = |reason: &str| Error::FormSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = s.strip_prefix("diag:") {
            let v = matrix::parse_ints::<T>(rest).map_err(|_| err("bad entry"))?;
            if v.len() != 3 {
                return Err(err("diag needs three entries"));
            }
            return Self::diag(v[0], v[1], v[2]);
        }
        let rest = s
            .strip_prefix("gram:")
            .ok_or_else(|| err("expected `diag:` or `gram:` prefix"))?;
        let rows: Vec<Vec<T>> = rest
            .split(';')
            .map(matrix::parse_ints::<T>)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err("bad entry"))?;
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        let gram = match lens.as_slice() {
            [3, 3, 3] => Mat3([
                [rows[0][0], rows[0][1], rows[0][2]],
                [rows[1][0], rows[1][1], rows[1][2]],
                [rows[2][0], rows[2][1], rows[2][2]],
            ]),
            [3, 2, 1] => Mat3([
                [rows[0][0], rows[0][1], rows[0][2]],
                [rows[0][1], rows[1][0], rows[1][1]],
                [rows[0][2], rows[1][1], rows[2][0]],
            ]),
            _ => return Err(err("expected three full rows or an upper triangle")),
        };
        Self::new(gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = TernaryForm<i64>;

    #[test]
    fn parses_both_grammars() {
        let d: F = "diag:1,3,3".parse().unwrap();
        assert_eq!(d.to_string(), "diag:1,3,3");
        let g: F = "gram:4,1,0;1,7,0;0,0,27".parse().unwrap();
        assert_eq!(g.to_string(), "gram:4,1,0;1,7,0;0,0,27");
        let u: F = "gram:4,1,0;7,0;27".parse().unwrap();
        assert_eq!(u, g);
        assert_eq!(g.det(), 27 * 27);
    }

    #[test]
    fn rejects_bad_forms() {
        assert_eq!("gram:2,1,0;1,8,3;0,0,21".parse::<F>(), Err(Error::NotSymmetric));
        assert_eq!("diag:1,-1,1".parse::<F>(), Err(Error::NotPositiveDefinite));
        assert_eq!("gram:1,2,0;2,1,0;0,0,1".parse::<F>(), Err(Error::NotPositiveDefinite));
        assert!("1,3,3".parse::<F>().is_err());
        assert!("diag:1,3".parse::<F>().is_err());
        assert!("gram:1,0;0,1".parse::<F>().is_err());
    }

    #[test]
    fn evaluation() {
        let f: F = "diag:1,3,3".parse().unwrap();
        assert_eq!(eval_form(&f, &[1, 1, 1]).unwrap(), 7);
        assert_eq!(eval_form(&f, &[0, 0, 0]).unwrap(), 0);
        let m2: F = "gram:4,1,0;1,7,0;0,0,27".parse().unwrap();
        assert_eq!(m2.eval(&[1, 0, 0]).unwrap(), 4);
        // off-diagonal entries count twice
        assert_eq!(m2.eval(&[1, 1, 0]).unwrap(), 4 + 2 + 7);
    }

    #[test]
    fn scalar_widths_agree() {
        let a: TernaryForm<i32> = "gram:7,-3,2;-3,9,3;2,3,16".parse().unwrap();
        let b: TernaryForm<i128> = "gram:7,-3,2;-3,9,3;2,3,16".parse().unwrap();
        assert_eq!(a.eval(&[2, -1, 3]).unwrap() as i128, b.eval(&[2, -1, 3]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f: F = "gram:4,1,0;1,7,0;0,0,27".parse().unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, "[[4,1,0],[1,7,0],[0,0,27]]");
        assert_eq!(serde_json::from_str::<F>(&js).unwrap(), f);
        assert!(serde_json::from_str::<F>("[[1,1,0],[0,1,0],[0,0,1]]").is_err());
    }
}
