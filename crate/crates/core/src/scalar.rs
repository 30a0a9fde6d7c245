//! Integer scalar abstraction shared by the form and matrix code.
//!
//! Everything in this crate is exact integer arithmetic. Form algebra is
//! written once against [`Scalar`] and instantiated for `i32`, `i64` and
//! `i128`; the crate root exports `i64` aliases for everyday use.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, PrimInt, Signed, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub trait Scalar:
    PrimInt
    + Signed
    + Integer
    + Roots
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    fn from_u64_checked(v: u64) -> Result<Self> {
        Self::from_u64(v).ok_or(Error::Overflow)
    }

    fn to_u64_checked(self) -> Result<u64> {
        self.to_u64().ok_or(Error::Overflow)
    }
}

impl Scalar for i32 {}
impl Scalar for i64 {}
impl Scalar for i128 {}

#[inline]
pub(crate) fn add<T: Scalar>(a: T, b: T) -> Result<T> {
    a.checked_add(&b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub<T: Scalar>(a: T, b: T) -> Result<T> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul<T: Scalar>(a: T, b: T) -> Result<T> {
    a.checked_mul(&b).ok_or(Error::Overflow)
}

pub(crate) fn lit<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("small literal fits every scalar type")
}

/// Gcd of three integers, never negative.
pub(crate) fn gcd3<T: Scalar>(v: &[T; 3]) -> T {
    v[0].gcd(&v[1]).gcd(&v[2])
}
