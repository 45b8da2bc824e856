//! Coefficient rings for truncated series.
//!
//! A [`CoefficientRing`] is a runtime value that owns the arithmetic on its
//! element type. Two rings are provided:
//!
//! - [`IntegerRing<T>`] over any signed primitive or big integer implementing
//!   the `num-traits` integer traits. `IntegerRing<BigInt>` is the exact ring.
//! - [`ModRing`], the integers modulo `M` with canonical representatives in
//!   `[0, M)`, stored as `u64`.
//!
//! The ring also owns the two series kernels (truncated convolution and
//! division by a series with unit constant term) so that each element type can
//! supply its own fast path.

use std::fmt;
use std::marker::PhantomData;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;

/// Largest modulus accepted by [`ModRing`]. Keeps every product of two
/// residues inside a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Identity of a coefficient ring, independent of its element representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingKind {
    Exact,
    Mod(u64),
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Exact => write!(f, "Z"),
            RingKind::Mod(m) => write!(f, "Z/{m}Z"),
        }
    }
}

/// Arithmetic on series coefficients.
#[allow(clippy::wrong_self_convention)]
pub trait CoefficientRing: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn kind(&self) -> RingKind;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Canonical integer lift of an element (`[0, M)` for residues).
    fn to_bigint(&self, a: &Self::Elem) -> BigInt;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_canonical(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse of a unit, `None` otherwise.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// First `len` coefficients of the product of `x` and `y`.
    ///
    /// Inputs must both have at least `len` entries.
    fn convolve(&self, x: &[Self::Elem], y: &[Self::Elem], len: usize) -> Vec<Self::Elem> {
        generic_convolve(self, x, y, len)
    }

    /// First `len` coefficients of `x / y`, where `y[0]` is a unit with
    /// inverse `y0_inv`.
    fn divide(&self, x: &[Self::Elem], y: &[Self::Elem], y0_inv: &Self::Elem, len: usize) -> Vec<Self::Elem> {
        generic_divide(self, x, y, y0_inv, len)
    }
}

/// Nonzero entries of `v[..len]` as `(index, value)` pairs.
pub(crate) fn nonzeros<R: CoefficientRing>(ring: &R, v: &[R::Elem], len: usize) -> Vec<(usize, R::Elem)> {
    v[..len].iter().enumerate().filter(|(_, c)| !ring.is_zero(c)).map(|(i, c)| (i, c.clone())).collect()
}

fn generic_convolve<R: CoefficientRing>(ring: &R, x: &[R::Elem], y: &[R::Elem], len: usize) -> Vec<R::Elem> {
    let xs = nonzeros(ring, x, len);
    let ys = nonzeros(ring, y, len);
    let (sparse, dense) = if xs.len() <= ys.len() { (xs, y) } else { (ys, x) };
    let mut out = vec![ring.zero(); len];
    for (i, c) in sparse {
        for (j, d) in dense[..len - i].iter().enumerate() {
            if !ring.is_zero(d) {
                out[i + j] = ring.add(&out[i + j], &ring.mul(&c, d));
            }
        }
    }
    out
}

fn generic_divide<R: CoefficientRing>(
    ring: &R,
    x: &[R::Elem],
    y: &[R::Elem],
    y0_inv: &R::Elem,
    len: usize,
) -> Vec<R::Elem> {
    let tail: Vec<(usize, R::Elem)> = nonzeros(ring, y, len).into_iter().filter(|(i, _)| *i > 0).collect();
    let mut out: Vec<R::Elem> = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = x[n].clone();
        for (i, c) in tail.iter().take_while(|(i, _)| *i <= n) {
            acc = ring.sub(&acc, &ring.mul(c, &out[n - i]));
        }
        out.push(ring.mul(&acc, y0_inv));
    }
    out
}

/// Integers represented by `T`.
///
/// With `T = BigInt` the ring is exact. Fixed-width `T` panics on overflow
/// rather than wrapping, so a result is never silently wrong.
pub struct IntegerRing<T> {
    _marker: PhantomData<fn() -> T>,
}

impl<T> IntegerRing<T> {
    pub const fn new() -> Self {
        IntegerRing { _marker: PhantomData }
    }
}

impl<T> Default for IntegerRing<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for IntegerRing<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for IntegerRing<T> {}

impl<T> PartialEq for IntegerRing<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for IntegerRing<T> {}

impl<T> fmt::Debug for IntegerRing<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerRing<{}>", std::any::type_name::<T>())
    }
}

/// Integer types usable as exact coefficients.
pub trait IntegerCoeff:
    Integer
    + Signed
    + Clone
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + ToBigInt
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> IntegerCoeff for T where
    T: Integer
        + Signed
        + Clone
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

fn overflow<T>() -> T {
    panic!("integer coefficient overflow; use IntegerRing<BigInt> for exact arithmetic")
}

impl<T: IntegerCoeff> CoefficientRing for IntegerRing<T> {
    type Elem = T;

    fn kind(&self) -> RingKind {
        RingKind::Exact
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn from_i64(&self, v: i64) -> T {
        T::from_i64(v).unwrap_or_else(overflow)
    }

    fn from_bigint(&self, v: &BigInt) -> T {
        // BigInt -> T goes through i128, wide enough for every fixed-width T.
        if let Some(t) = v.to_i128().and_then(T::from_i128) {
            return t;
        }
        // Only reachable for arbitrary-precision T.
        let mut acc = T::zero();
        let base = T::from_u64(1 << 32).unwrap_or_else(overflow);
        let (sign, digits) = v.to_u32_digits();
        for d in digits.iter().rev() {
            acc = acc
                .checked_mul(&base)
                .and_then(|a| a.checked_add(&T::from_u32(*d).unwrap_or_else(overflow)))
                .unwrap_or_else(overflow);
        }
        if sign == num_bigint::Sign::Minus {
            -acc
        } else {
            acc
        }
    }

    fn to_bigint(&self, a: &T) -> BigInt {
        a.to_bigint().expect("integer converts to BigInt")
    }

    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }

    fn is_canonical(&self, _: &T) -> bool {
        true
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.checked_add(b).unwrap_or_else(overflow)
    }

    fn sub(&self, a: &T, b: &T) -> T {
        a.checked_sub(b).unwrap_or_else(overflow)
    }

    fn neg(&self, a: &T) -> T {
        T::zero().checked_sub(a).unwrap_or_else(overflow)
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.checked_mul(b).unwrap_or_else(overflow)
    }

    fn unit_inverse(&self, a: &T) -> Option<T> {
        if a.is_one() || (-a.clone()).is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
}

/// Integers modulo `M`, `2 <= M <= 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModRing {
    modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        if modulus > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(modulus));
        }
        Ok(ModRing { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }
}

impl CoefficientRing for ModRing {
    type Elem = u64;

    fn kind(&self) -> RingKind {
        RingKind::Mod(self.modulus)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_canonical(&self, a: &u64) -> bool {
        *a < self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }

    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        let m = self.modulus as i128;
        let egcd = (*a as i128).extended_gcd(&m);
        if egcd.gcd != 1 {
            return None;
        }
        Some(egcd.x.rem_euclid(m) as u64)
    }

    fn convolve(&self, x: &[u64], y: &[u64], len: usize) -> Vec<u64> {
        if self.modulus == 2 {
            return gf2::mul_truncated(x, y, len);
        }
        let xs = nonzeros(self, x, len);
        let ys = nonzeros(self, y, len);
        let (sparse, dense) = if xs.len() <= ys.len() { (xs, y) } else { (ys, x) };
        // Each product is below 2^64; a u128 accumulator absorbs up to 2^64 of them.
        let mut acc = vec![0u128; len];
        for (i, c) in sparse {
            for (slot, d) in acc[i..].iter_mut().zip(&dense[..len - i]) {
                *slot += (c * d) as u128;
            }
        }
        let m = self.modulus as u128;
        acc.into_iter().map(|a| (a % m) as u64).collect()
    }

    fn divide(&self, x: &[u64], y: &[u64], y0_inv: &u64, len: usize) -> Vec<u64> {
        if self.modulus == 2 {
            return gf2::div_truncated(x, y, len);
        }
        let tail: Vec<(usize, u64)> = nonzeros(self, y, len).into_iter().filter(|(i, _)| *i > 0).collect();
        let m = self.modulus as u128;
        let mut out: Vec<u64> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc: u128 = 0;
            for &(i, c) in tail.iter().take_while(|(i, _)| *i <= n) {
                acc += (c * out[n - i]) as u128;
            }
            let s = (acc % m) as u64;
            out.push(self.mul(&self.sub(&x[n], &s), y0_inv));
        }
        out
    }
}
