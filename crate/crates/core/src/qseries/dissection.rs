//! p-dissection of Euler's function `f(-q) = (q;q)∞` for primes `p >= 5`.
//!
//! With `t_p` the integral one of `(±p - 1)/6`, `δ_p = (p² - 1)/24` and
//! `ε_p = (-1)^{t_p}`:
//!
//! ```text
//! f(-q) = Σ_{|j| <= (p-1)/2, j != t_p} (-1)^j q^{(3j²+j)/2}
//!             f(-q^{(3p²+(6j+1)p)/2}, -q^{(3p²-(6j+1)p)/2})
//!         + ε_p q^{δ_p} f(-q^{p²})
//! ```
//!
//! and no exponent class `(3j²+j)/2 mod p` of the sum meets `δ_p mod p`.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::ring::CoefficientRing;
use crate::series::TruncatedSeries;

use super::product::Sign;
use super::theta::theta_f;

/// A prime `p >= 5` with its dissection constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u64,
    delta: u64,
    t: i64,
    epsilon: i64,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("dissection needs a prime p >= 5, got {p}")));
        }
        let pi = p as i64;
        let t = if p % 6 == 1 { (pi - 1) / 6 } else { (-pi - 1) / 6 };
        let epsilon = if t.rem_euclid(2) == 0 { 1 } else { -1 };
        Ok(PrimeContext { p, delta: (p * p - 1) / 24, t, epsilon })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `(p² - 1)/24`.
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// The integral one of `(p - 1)/6` and `(-p - 1)/6`.
    pub fn t(&self) -> i64 {
        self.t
    }

    /// `(-1)^{t_p}`.
    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    fn half_width(&self) -> i64 {
        (self.p as i64 - 1) / 2
    }

    /// Summation indices `j` with `|j| <= (p-1)/2`, `j != t_p`.
    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        let h = self.half_width();
        (-h..=h).filter(move |&j| j != self.t)
    }

    /// Residue classes mod `p` of `(3j² + j)/2` over [`indices`](Self::indices).
    pub fn pentagonal_classes(&self) -> Vec<u64> {
        self.indices().map(|j| ((3 * j * j + j) / 2).rem_euclid(self.p as i64) as u64).collect()
    }

    /// `δ_p mod p` lies outside every class of the sum.
    pub fn delta_class_is_distinct(&self) -> bool {
        !self.pentagonal_classes().contains(&(self.delta % self.p))
    }
}

/// The `p` components of `f(-q)` by residue class of the exponent mod `p`,
/// each a full-length series supported on its class.
pub fn p_dissection_f<R: CoefficientRing>(
    ring: &R,
    ctx: &PrimeContext,
    order: usize,
) -> Result<Vec<(u64, TruncatedSeries<R>)>> {
    let p = ctx.p;
    let pi = p as i64;
    let mut parts: Vec<(u64, TruncatedSeries<R>)> =
        (0..p).map(|r| (r, TruncatedSeries::zero(ring.clone(), order))).collect();
    for j in ctx.indices() {
        let lead = ((3 * j * j + j) / 2) as usize;
        let x = (3 * pi * pi + (6 * j + 1) * pi) / 2;
        let y = (3 * pi * pi - (6 * j + 1) * pi) / 2;
        let theta = theta_f(ring, x as u64, y as u64, Sign::Minus, Sign::Minus, order)?;
        let sign = if j.rem_euclid(2) == 0 { 1 } else { -1 };
        let term = theta.shift(lead).scale_i64(sign);
        let class = (lead as u64) % p;
        parts[class as usize].1 = parts[class as usize].1.checked_add(&term)?;
    }
    let tail = theta_f(ring, p * p, 2 * p * p, Sign::Minus, Sign::Minus, order)?
        .shift(ctx.delta as usize)
        .scale_i64(ctx.epsilon);
    let class = (ctx.delta % p) as usize;
    parts[class].1 = parts[class].1.checked_add(&tail)?;
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::product::{pochhammer_series, PochhammerFactor};
    use crate::{Exact, ExactSeries};

    #[test]
    fn context_constants() {
        let eps: Vec<i64> = [5u64, 7, 11, 13].iter().map(|&p| PrimeContext::new(p).unwrap().epsilon()).collect();
        assert_eq!(eps, vec![-1, -1, 1, 1]);
        let c5 = PrimeContext::new(5).unwrap();
        assert_eq!((c5.t(), c5.delta()), (-1, 1));
        let c7 = PrimeContext::new(7).unwrap();
        assert_eq!((c7.t(), c7.delta()), (1, 2));
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            let c = PrimeContext::new(p).unwrap();
            assert_eq!(24 * c.delta(), p * p - 1);
            assert_eq!(6 * c.t(), if p % 6 == 1 { p as i64 - 1 } else { -(p as i64) - 1 });
        }
        assert!(PrimeContext::new(3).is_err());
        assert!(PrimeContext::new(25).is_err());
    }

    #[test]
    fn delta_class_is_distinct_for_small_primes() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            assert!(PrimeContext::new(p).unwrap().delta_class_is_distinct(), "p = {p}");
        }
    }

    /// Residues of pentagonal exponents `k(3k-1)/2 <= order`, enumerated
    /// directly.
    fn pentagonal_residues(p: u64, order: i64) -> Vec<u64> {
        let mut out: Vec<u64> =
            (-100i64..=100).map(|k| k * (3 * k - 1) / 2).filter(|&e| e <= order).map(|e| (e as u64) % p).collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn five_dissection_supports() {
        let z = Exact::new();
        let ctx = PrimeContext::new(5).unwrap();
        let parts = p_dissection_f(&z, &ctx, 500).unwrap();
        let nonzero: Vec<u64> = parts.iter().filter(|(_, s)| !s.is_zero()).map(|(r, _)| *r).collect();
        assert_eq!(nonzero, pentagonal_residues(5, 500));
        assert_eq!(nonzero, vec![0, 1, 2]);
    }

    #[test]
    fn components_reconstruct_euler_function() {
        let z = Exact::new();
        let n = 500;
        let euler = pochhammer_series(&z, &PochhammerFactor::euler(1, 1).unwrap(), n).unwrap();
        for p in [5u64, 7, 11, 13] {
            let parts = p_dissection_f(&z, &PrimeContext::new(p).unwrap(), n).unwrap();
            let mut sum = ExactSeries::zero(z, n);
            for (r, s) in &parts {
                for (i, c) in s.coeffs().iter().enumerate() {
                    if *c != 0.into() {
                        assert_eq!(i as u64 % p, *r, "p = {p}: stray exponent {i}");
                    }
                }
                sum = &sum + s;
            }
            assert_eq!(sum, euler, "p = {p}");
        }
    }
}
