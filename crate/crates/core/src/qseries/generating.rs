//! Generating functions of the four counting functions, expanded from their
//! defining products:
//!
//! - `Σ p(n) q^n = 1 / (q;q)∞`
//! - `Σ b_ℓ(n) q^n = (q^ℓ;q^ℓ)∞ / (q;q)∞`
//! - `Σ Δ_k(n) q^n = (-q;q)∞ / ((q;q)∞² (-q^{2k+1};q^{2k+1})∞)`
//! - `Σ 𝔅_k(n) q^n = (-q;q)∞ / ((q;q)∞^{k-1} (-q^k;q^k)∞)`

use crate::error::{Error, Result};
use crate::ring::CoefficientRing;
use crate::series::TruncatedSeries;

use super::product::{product_series, PochhammerFactor, ProductSpec};

pub fn partition_spec() -> ProductSpec {
    ProductSpec::default().with(PochhammerFactor::euler(1, -1).expect("valid factor"))
}

pub fn l_regular_spec(l: u64) -> Result<ProductSpec> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("ℓ-regular partitions need ℓ >= 2, got {l}")));
    }
    Ok(ProductSpec::default().with(PochhammerFactor::euler(l, 1)?).with(PochhammerFactor::euler(1, -1)?))
}

pub fn broken_diamond_spec(k: u64) -> Result<ProductSpec> {
    if k < 1 {
        return Err(Error::InvalidParameter("broken k-diamonds need k >= 1".into()));
    }
    let m = 2 * k + 1;
    Ok(ProductSpec::default()
        .with(PochhammerFactor::negated(1, 1, 1)?)
        .with(PochhammerFactor::euler(1, -2)?)
        .with(PochhammerFactor::negated(m, m, -1)?))
}

pub fn bracelet_spec(k: u64) -> Result<ProductSpec> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k dots bracelets need k >= 3, got {k}")));
    }
    Ok(ProductSpec::default()
        .with(PochhammerFactor::negated(1, 1, 1)?)
        .with(PochhammerFactor::euler(1, 1 - k as i64)?)
        .with(PochhammerFactor::negated(k, k, -1)?))
}

/// `Σ p(n) q^n`.
pub fn gen_partition<R: CoefficientRing>(ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
    product_series(ring, &partition_spec(), order)
}

/// `Σ b_ℓ(n) q^n`, `ℓ >= 2`.
pub fn gen_l_regular<R: CoefficientRing>(ring: &R, l: u64, order: usize) -> Result<TruncatedSeries<R>> {
    product_series(ring, &l_regular_spec(l)?, order)
}

/// `Σ Δ_k(n) q^n`, `k >= 1`.
pub fn gen_broken_diamond<R: CoefficientRing>(ring: &R, k: u64, order: usize) -> Result<TruncatedSeries<R>> {
    product_series(ring, &broken_diamond_spec(k)?, order)
}

/// `Σ 𝔅_k(n) q^n`, `k >= 3`.
pub fn gen_bracelet<R: CoefficientRing>(ring: &R, k: u64, order: usize) -> Result<TruncatedSeries<R>> {
    product_series(ring, &bracelet_spec(k)?, order)
}
