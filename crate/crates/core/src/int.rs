//! The integer scalar abstraction.
//!
//! Every algorithm in this crate is written once against [`Int`] and runs on
//! `i64`, `i128` and [`num_bigint::BigInt`]. Fixed-width types go through the
//! checked helpers below, so overflow surfaces as [`Error::Overflow`] instead
//! of a wrapped result.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact signed integer usable as a form coefficient.
pub trait Int:
    Integer
    + Signed
    + Roots
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Clone
    + Debug
    + Display
    + Hash
    + Send
    + Sync
    + 'static
{
    fn lit(n: i64) -> Self {
        Self::from_i64(n).expect("small literal fits every Int")
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Roots
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Clone
        + Debug
        + Display
        + Hash
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn add<T: Int>(x: &T, y: &T) -> Result<T> {
    x.checked_add(y).ok_or(Error::Overflow)
}

pub(crate) fn sub<T: Int>(x: &T, y: &T) -> Result<T> {
    x.checked_sub(y).ok_or(Error::Overflow)
}

pub(crate) fn mul<T: Int>(x: &T, y: &T) -> Result<T> {
    x.checked_mul(y).ok_or(Error::Overflow)
}

pub(crate) fn square<T: Int>(x: &T) -> Result<T> {
    mul(x, x)
}

/// `n / m` rounded to the nearest integer, ties toward zero. `m` must be positive.
pub(crate) fn div_round_half_to_zero<T: Int>(n: &T, m: &T) -> Result<T> {
    let (q, r) = n.div_mod_floor(m);
    let twice_r = add(&r, &r)?;
    Ok(match twice_r.cmp(m) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + T::one(),
        std::cmp::Ordering::Equal if q.is_negative() => q + T::one(),
        std::cmp::Ordering::Equal => q,
    })
}

/// Smallest `r >= 0` with `r * r >= n`, for `n >= 0`.
pub fn ceil_sqrt<T: Int>(n: &T) -> T {
    let r = n.sqrt();
    if &(r.clone() * r.clone()) < n {
        r + T::one()
    } else {
        r
    }
}

/// Bezout coefficients `(g, x, y)` with `g = gcd(p, q) >= 0` and `x*p + y*q = g`.
pub(crate) fn bezout<T: Int>(p: &T, q: &T) -> (T, T, T) {
    let e = p.extended_gcd(q);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub(crate) fn show<T: Display>(x: &T) -> String {
    x.to_string()
}
