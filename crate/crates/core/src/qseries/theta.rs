//! Ramanujan's theta function `f(a, b)` at monomial arguments and the
//! Jacobi triple product at power-of-q specializations.

use crate::error::{Error, Result};
use crate::ring::CoefficientRing;
use crate::series::TruncatedSeries;
use crate::Exact;

use super::product::{product_series, PochhammerFactor, ProductSpec, Sign};

/// `f(sx·q^x, sy·q^y) = Σ_n sx^{n(n+1)/2} sy^{n(n-1)/2} q^{x·n(n+1)/2 + y·n(n-1)/2}`
/// over all integers `n`, truncated at `order`.
pub fn theta_f<R: CoefficientRing>(
    ring: &R,
    x: u64,
    y: u64,
    sx: Sign,
    sy: Sign,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    if x == 0 && y == 0 {
        return Err(Error::InvalidParameter("theta_f needs x + y >= 1".into()));
    }
    let (x, y) = (x as i128, y as i128);
    let mut c = vec![0i64; order + 1];
    let mut add_term = |n: i128| -> bool {
        let a = n * (n + 1) / 2;
        let b = n * (n - 1) / 2;
        let e = x * a + y * b;
        if e > order as i128 {
            return false;
        }
        c[e as usize] += sx.pow_parity(a) * sy.pow_parity(b);
        true
    };
    // The exponent is nondecreasing in |n| on each side of zero.
    let mut n = 0i128;
    while add_term(n) {
        n += 1;
    }
    let mut n = -1i128;
    while add_term(n) {
        n -= 1;
    }
    let coeffs = c.into_iter().map(|v| ring.from_i64(v)).collect();
    Ok(TruncatedSeries::from_raw(ring.clone(), coeffs))
}

/// Both sides of the Jacobi triple product at `z = sz·q^t`:
/// `Σ_n sz^n q^{n² + t·n}` and `(-sz·q^{1+t}; q²)∞ (-sz·q^{1-t}; q²)∞ (q²; q²)∞`.
///
/// Only `t ∈ {0, 1}` keeps every exponent nonnegative. For `t = 1` the
/// second factor starts at `q^0`; its leading `(1 + sz)` is pulled out as a
/// scalar.
pub fn jacobi_triple_sides(t: u64, sz: Sign, order: usize) -> Result<(TruncatedSeries<Exact>, TruncatedSeries<Exact>)> {
    if t > 1 {
        return Err(Error::UnsupportedSpecialization(format!(
            "z = ±q^{t} makes the factor (-q^(1-t)/z;q^2) a Laurent series"
        )));
    }
    let ring = Exact::new();
    let mut sum = vec![0i64; order + 1];
    let t = t as i64;
    let mut n = 0i64;
    loop {
        let mut any = false;
        for m in [n, -n - 1] {
            let e = m * m + t * m;
            if e as usize <= order {
                sum[e as usize] += sz.pow_parity(m as i128);
                any = true;
            }
        }
        if !any {
            break;
        }
        n += 1;
    }
    let sum = TruncatedSeries::from_i64s(ring, &sum)?;

    // (-sz·q^k; q²)∞ is (q^k;q²) when sz = -1 and (-q^k;q²) when sz = +1,
    // which is exactly the factor sign convention.
    let pochhammer_sign = sz;
    let mut spec = ProductSpec::default()
        .with(PochhammerFactor::new(pochhammer_sign, 1 + t as u64, 2, 1)?)
        .with(PochhammerFactor::euler(2, 1)?);
    let scalar = if t == 0 {
        spec = spec.with(PochhammerFactor::new(pochhammer_sign, 1, 2, 1)?);
        1
    } else {
        spec = spec.with(PochhammerFactor::new(pochhammer_sign, 2, 2, 1)?);
        1 + sz.to_i64()
    };
    let product = product_series(&ring, &spec, order)?.scale_i64(scalar);
    Ok((sum, product))
}

/// True iff the two sides of [`jacobi_triple_sides`] agree to `order`.
pub fn jacobi_triple_check(t: u64, sz: Sign, order: usize) -> Result<bool> {
    let (sum, product) = jacobi_triple_sides(t, sz, order)?;
    sum.equal_upto(&product, order)
}
