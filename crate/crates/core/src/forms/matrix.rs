//! 3×3 integer matrices and vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub type Vec3<T> = [T; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Scalar> Mat3<T> {
    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Self> {
        let mut m = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = T::from_i64(rows[i][j]).ok_or(Error::Overflow)?;
            }
        }
        Ok(Mat3(m))
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(s: T) -> Self {
        let z = T::zero();
        Mat3([[s, z, z], [z, s, z], [z, z, s]])
    }

    pub fn from_columns(cols: [Vec3<T>; 3]) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        Mat3(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.0[i][j]
    }

    pub fn column(&self, j: usize) -> Vec3<T> {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = T::zero();
                for k in 0..3 {
                    acc = scalar::add(acc, scalar::mul(self.0[i][k], other.0[k][j])?)?;
                }
                out[i][j] = acc;
            }
        }
        Ok(Mat3(out))
    }

    pub fn scale(&self, s: T) -> Result<Self> {
        let mut out = self.0;
        for row in out.iter_mut() {
            for x in row.iter_mut() {
                *x = scalar::mul(*x, s)?;
            }
        }
        Ok(Mat3(out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.0;
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = scalar::sub(out[i][j], other.0[i][j])?;
            }
        }
        Ok(Mat3(out))
    }

    /// `M·v` with `v` as a column.
    pub fn apply(&self, v: &Vec3<T>) -> Result<Vec3<T>> {
        let mut out = [T::zero(); 3];
        for (i, o) in out.iter_mut().enumerate() {
            for (k, &vk) in v.iter().enumerate() {
                *o = scalar::add(*o, scalar::mul(self.0[i][k], vk)?)?;
            }
        }
        Ok(out)
    }

    /// `Mᵗ·A·M`.
    pub fn congruent(&self, a: &Self) -> Result<Self> {
        self.transpose().mul(&a.mul(self)?)
    }

    pub fn minor(&self, r: [usize; 2], c: [usize; 2]) -> Result<T> {
        let m = &self.0;
        scalar::sub(
            scalar::mul(m[r[0]][c[0]], m[r[1]][c[1]])?,
            scalar::mul(m[r[0]][c[1]], m[r[1]][c[0]])?,
        )
    }

    pub fn det(&self) -> Result<T> {
        let m = &self.0;
        let a = scalar::mul(m[0][0], self.minor([1, 2], [1, 2])?)?;
        let b = scalar::mul(m[0][1], self.minor([1, 2], [0, 2])?)?;
        let c = scalar::mul(m[0][2], self.minor([1, 2], [0, 1])?)?;
        scalar::add(scalar::sub(a, b)?, c)
    }

    pub fn trace(&self) -> Result<T> {
        scalar::add(scalar::add(self.0[0][0], self.0[1][1])?, self.0[2][2])
    }

    /// Diagonal entries of the adjugate: the principal 2×2 minors.
    pub fn adjugate_diagonal(&self) -> Result<Vec3<T>> {
        Ok([
            self.minor([1, 2], [1, 2])?,
            self.minor([0, 2], [0, 2])?,
            self.minor([0, 1], [0, 1])?,
        ])
    }

    /// Coefficients `(trace, sum of principal 2×2 minors, det)` of
    /// `λ³ − c2·λ² + c1·λ − c0`.
    pub fn char_poly(&self) -> Result<(T, T, T)> {
        let adj = self.adjugate_diagonal()?;
        let c1 = scalar::add(scalar::add(adj[0], adj[1])?, adj[2])?;
        Ok((self.trace()?, c1, self.det()?))
    }
}

impl<T: Scalar> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("{},{},{}", r[0], r[1], r[2]))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Row-major `a,b,c;d,e,f;g,h,i`.
impl<T: Scalar> FromStr for Mat3<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::MatrixSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let rows: Vec<&str> = s.trim().split(';').collect();
        if rows.len() != 3 {
            return Err(err("expected three rows separated by `;`"));
        }
        let mut m = [[T::zero(); 3]; 3];
        for (i, row) in rows.iter().enumerate() {
            let cells = parse_ints::<T>(row).map_err(|_| err("bad entry"))?;
            if cells.len() != 3 {
                return Err(err("each row needs three entries"));
            }
            m[i].copy_from_slice(&cells);
        }
        Ok(Mat3(m))
    }
}

pub(crate) fn parse_ints<T: Scalar>(s: &str) -> std::result::Result<Vec<T>, ()> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i128>()
                .ok()
                .and_then(T::from_i128)
                .ok_or(())
        })
        .collect()
}

pub fn format_vec<T: Scalar>(v: &Vec3<T>) -> String {
    format!("({},{},{})", v[0], v[1], v[2])
}

pub fn cross<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>) -> Result<Vec3<T>> {
    let m = |x: T, y: T| scalar::mul(x, y);
    Ok([
        scalar::sub(m(a[1], b[2])?, m(a[2], b[1])?)?,
        scalar::sub(m(a[2], b[0])?, m(a[0], b[2])?)?,
        scalar::sub(m(a[0], b[1])?, m(a[1], b[0])?)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let m: Mat3<i64> = "5,0,0;0,4,-3;0,3,4".parse().unwrap();
        assert_eq!(m.get(1, 2), -3);
        assert_eq!(m.to_string(), "5,0,0;0,4,-3;0,3,4");
        assert!("1,2;3,4".parse::<Mat3<i64>>().is_err());
        assert!("1,2,3;4,5;6,7,8".parse::<Mat3<i64>>().is_err());
    }

    #[test]
    fn algebra() {
        let t: Mat3<i64> = "5,0,0;0,4,-3;0,3,4".parse().unwrap();
        assert_eq!(t.det().unwrap(), 125);
        assert_eq!(t.char_poly().unwrap(), (13, 65, 125));
        let g = Mat3::from_i64([[1, 0, 0], [0, 27, 0], [0, 0, 27]]).unwrap();
        assert_eq!(t.congruent(&g).unwrap(), g.scale(25).unwrap());
        assert_eq!(t.apply(&[1, 0, 0]).unwrap(), [5, 0, 0]);
        assert_eq!(cross(&[1, 0, 0], &[0, 1, 0]).unwrap(), [0, 0, 1]);
        assert_eq!(Mat3::<i32>::identity().mul(&Mat3::scalar(7)).unwrap(), Mat3::scalar(7));
    }

    #[test]
    fn overflow_surfaces() {
        let big = Mat3::<i32>::scalar(i32::MAX);
        assert_eq!(big.mul(&big), Err(Error::Overflow));
    }
}
