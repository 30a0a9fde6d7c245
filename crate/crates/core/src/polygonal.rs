//! Generalized polygonal numbers of order 4 and 8.

use crate::error::{Error, Result};
use crate::scalar::{self, lit, Scalar};

/// Polygonal orders handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Square,
    Octagonal,
}

impl Order {
    pub fn from_m(m: u32) -> Result<Self> {
        match m {
            4 => Ok(Order::Square),
            8 => Ok(Order::Octagonal),
            other => Err(Error::UnsupportedOrder(other)),
        }
    }

    pub fn m(self) -> u32 {
        match self {
            Order::Square => 4,
            Order::Octagonal => 8,
        }
    }

    /// `P_m(x) = ((m-2)x^2 - (m-4)x) / 2` for any integer `x`.
    pub fn value<T: Scalar>(self, x: T) -> Result<T> {
        let sq = scalar::mul(x, x)?;
        match self {
            Order::Square => Ok(sq),
            Order::Octagonal => scalar::sub(scalar::mul(lit(3), sq)?, scalar::mul(lit(2), x)?),
        }
    }

    /// All generalized values `<= bound`, ascending and deduplicated.
    pub fn values_up_to(self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        match self {
            Order::Square => {
                let mut x = 0u64;
                while let Some(v) = x.checked_mul(x).filter(|&v| v <= bound) {
                    out.push(v);
                    x += 1;
                }
            }
            Order::Octagonal => {
                // P_8(k) = 3k^2 - 2k and P_8(-k) = 3k^2 + 2k interleave as k grows.
                out.push(0);
                let mut k = 1u64;
                loop {
                    let base = match k.checked_mul(k).and_then(|s| s.checked_mul(3)) {
                        Some(b) => b,
                        None => break,
                    };
                    let lo = base - 2 * k;
                    if lo > bound {
                        break;
                    }
                    out.push(lo);
                    if let Some(hi) = base.checked_add(2 * k).filter(|&h| h <= bound) {
                        out.push(hi);
                    }
                    k += 1;
                }
            }
        }
        out
    }
}

/// `P_m(x)` for `m` in {4, 8}.
pub fn polygonal_value<T: Scalar>(m: u32, x: T) -> Result<T> {
    Order::from_m(m)?.value(x)
}

pub fn polygonal_values_up_to(m: u32, bound: u64) -> Result<Vec<u64>> {
    Ok(Order::from_m(m)?.values_up_to(bound))
}
