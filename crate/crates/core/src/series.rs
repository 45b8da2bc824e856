//! Truncated formal power series.
//!
//! A [`TruncatedSeries`] stores `c_0, ..., c_N` over a coefficient ring and is
//! exact on exactly those indices. Binary operations truncate to the smaller
//! order of their operands.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{CoefficientRing, IntegerCoeff, IntegerRing, ModRing};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: CoefficientRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoefficientRing> TruncatedSeries<R> {
    /// Builds a series from canonical coefficients; `coeffs.len()` is
    /// `order + 1`.
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !ring.is_canonical(c)) {
            return Err(Error::NonCanonical { index, ring: ring.kind() });
        }
        Ok(TruncatedSeries { ring, coeffs })
    }

    pub(crate) fn from_raw(ring: R, coeffs: Vec<R::Elem>) -> Self {
        debug_assert!(!coeffs.is_empty());
        TruncatedSeries { ring, coeffs }
    }

    pub fn from_i64s(ring: R, values: &[i64]) -> Result<Self> {
        let coeffs = values.iter().map(|&v| ring.from_i64(v)).collect();
        Self::new(ring, coeffs)
    }

    pub fn zero(ring: R, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order + 1];
        TruncatedSeries { ring, coeffs }
    }

    pub fn one(ring: R, order: usize) -> Self {
        Self::monomial(ring, 0, order)
    }

    /// `q^power`, which is the zero series when `power > order`.
    pub fn monomial(ring: R, power: usize, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if power <= order {
            s.coeffs[power] = s.ring.one();
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    /// Coefficient of `q^n`, `None` beyond the order.
    pub fn coeff(&self, n: usize) -> Option<&R::Elem> {
        self.coeffs.get(n)
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|c| !self.ring.is_zero(c)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Lowers the order to `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let len = (order + 1).min(self.coeffs.len());
        Self::from_raw(self.ring.clone(), self.coeffs[..len].to_vec())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.kind(), other.ring.kind()));
        }
        Ok(())
    }

    fn common_len(&self, other: &Self) -> usize {
        self.coeffs.len().min(other.coeffs.len())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let r = &self.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| r.add(a, b)).collect();
        Ok(Self::from_raw(r.clone(), coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let r = &self.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| r.sub(a, b)).collect();
        Ok(Self::from_raw(r.clone(), coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let len = self.common_len(other);
        let coeffs = self.ring.convolve(&self.coeffs, &other.coeffs, len);
        Ok(Self::from_raw(self.ring.clone(), coeffs))
    }

    /// `self / other`, requiring a unit constant term in `other`.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let inv = self.ring.unit_inverse(&other.coeffs[0]).ok_or(Error::NonUnitConstant(self.ring.kind()))?;
        let len = self.common_len(other);
        let coeffs = self.ring.divide(&self.coeffs, &other.coeffs, &inv, len);
        Ok(Self::from_raw(self.ring.clone(), coeffs))
    }

    /// Multiplicative inverse to the same order.
    pub fn invert(&self) -> Result<Self> {
        Self::one(self.ring.clone(), self.order()).checked_div(self)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&self.ring.from_i64(c))
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.ring.clone(), self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies `self` by `base^e`.
    ///
    /// Sparse bases are applied factor by factor (`|e|` sparse passes);
    /// dense bases go through binary powering and a single product.
    pub fn mul_pow(&self, base: &Self, e: i64) -> Result<Self> {
        self.check_ring(base)?;
        if e == 0 {
            return Ok(self.truncate(base.order()));
        }
        let len = self.common_len(base) as f64;
        let nnz = base.support_size().max(1) as f64;
        let k = e.unsigned_abs() as f64;
        let repeated = k * len * nnz;
        let powered = (2.0 * k.log2().ceil() + 2.0) * len * len;
        if repeated <= powered {
            let mut acc = self.truncate(base.order());
            for _ in 0..e.unsigned_abs() {
                acc = if e > 0 { acc.checked_mul(base)? } else { acc.checked_div(base)? };
            }
            Ok(acc)
        } else if e > 0 {
            self.checked_mul(&base.pow(e)?)
        } else {
            self.checked_div(&base.pow(-e)?)
        }
    }

    /// Sub-series on the progression `step * n + residue`:
    /// `result[n] = self[step * n + residue]`.
    pub fn dissect(&self, step: u64, residue: u64) -> Result<Self> {
        if step == 0 || residue >= step {
            return Err(Error::InvalidProgression { step, residue });
        }
        let order = self.order();
        if residue as usize > order {
            return Err(Error::ResidueBeyondOrder { residue, order });
        }
        let coeffs = self.coeffs[residue as usize..].iter().step_by(step as usize).cloned().collect();
        Ok(Self::from_raw(self.ring.clone(), coeffs))
    }

    /// Substitutes `q -> q^t`.
    ///
    /// The result is exact up to index `t * (order + 1) - 1`, which becomes
    /// its order.
    pub fn inflate(&self, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("inflation factor must be at least 1".into()));
        }
        let t = t as usize;
        let mut coeffs = vec![self.ring.zero(); t * self.coeffs.len()];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[t * n] = c.clone();
        }
        Ok(Self::from_raw(self.ring.clone(), coeffs))
    }

    /// Multiplies by `q^t`, keeping the order and dropping the top `t`
    /// coefficients.
    pub fn shift(&self, t: usize) -> Self {
        let len = self.coeffs.len();
        let mut coeffs = vec![self.ring.zero(); len];
        if t < len {
            coeffs[t..].clone_from_slice(&self.coeffs[..len - t]);
        }
        Self::from_raw(self.ring.clone(), coeffs)
    }

    /// Smallest index `n <= bound` at which the two series differ.
    pub fn first_mismatch_upto(&self, other: &Self, bound: usize) -> Result<Option<usize>> {
        self.check_ring(other)?;
        for s in [self, other] {
            if bound > s.order() {
                return Err(Error::BoundBeyondOrder { bound, order: s.order() });
            }
        }
        Ok((0..=bound).find(|&n| self.coeffs[n] != other.coeffs[n]))
    }

    pub fn equal_upto(&self, other: &Self, bound: usize) -> Result<bool> {
        Ok(self.first_mismatch_upto(other, bound)?.is_none())
    }

    /// Canonical integer lifts of all coefficients.
    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| self.ring.to_bigint(c)).collect()
    }

    /// Maps the coefficients into another ring through their integer lifts.
    ///
    /// This is a ring homomorphism only when `target` is a quotient of this
    /// ring (exact to modular, or `Z/MZ` to `Z/dZ` with `d | M`).
    pub fn map_into<S: CoefficientRing>(&self, target: &S) -> TruncatedSeries<S> {
        let coeffs = self.coeffs.iter().map(|c| target.from_bigint(&self.ring.to_bigint(c))).collect();
        TruncatedSeries::from_raw(target.clone(), coeffs)
    }
}

impl<T: IntegerCoeff> TruncatedSeries<IntegerRing<T>> {
    /// Coefficientwise reduction modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Result<TruncatedSeries<ModRing>> {
        let ring = ModRing::new(m)?;
        Ok(self.map_into(&ring))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, R: CoefficientRing> $tr<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;

            /// Panics on ring mismatch; use the `checked_*` method to handle it.
            fn $method(self, rhs: &'a TruncatedSeries<R>) -> TruncatedSeries<R> {
                self.$checked(rhs).expect("series ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<R: CoefficientRing> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn neg(self) -> TruncatedSeries<R> {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        TruncatedSeries::from_raw(self.ring.clone(), coeffs)
    }
}
