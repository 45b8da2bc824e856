//! Ramanujan's quotients `a(q)` and `b(q) = 1/a(q)` from the 5-dissection
//! `(q;q)∞ = (q^25;q^25)∞ (a(q) - q - q² b(q))`.

use crate::error::Result;
use crate::ring::CoefficientRing;
use crate::series::TruncatedSeries;

use super::product::{product_series, PochhammerFactor, ProductSpec};

fn quotient(num: [u64; 2], den: [u64; 2]) -> ProductSpec {
    let f = |a, e| PochhammerFactor::plain(a, 25, e).expect("valid factor");
    ProductSpec::new(vec![f(num[0], 1), f(num[1], 1), f(den[0], -1), f(den[1], -1)])
}

/// `(q^10, q^15; q^25)∞ / (q^5, q^20; q^25)∞`.
pub fn ramanujan_a_spec() -> ProductSpec {
    quotient([10, 15], [5, 20])
}

/// `(q^5, q^20; q^25)∞ / (q^10, q^15; q^25)∞`.
pub fn ramanujan_b_spec() -> ProductSpec {
    quotient([5, 20], [10, 15])
}

pub fn ramanujan_a<R: CoefficientRing>(ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
    product_series(ring, &ramanujan_a_spec(), order)
}

pub fn ramanujan_b<R: CoefficientRing>(ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
    product_series(ring, &ramanujan_b_spec(), order)
}

/// Right-hand side `(q^25;q^25)∞ (a(q) - q - q² b(q))`.
pub fn five_dissection_rhs<R: CoefficientRing>(ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
    let a = ramanujan_a(ring, order)?;
    let b = ramanujan_b(ring, order)?;
    let q = TruncatedSeries::monomial(ring.clone(), 1, order);
    let inner = a.checked_sub(&q)?.checked_sub(&b.shift(2))?;
    let outer = product_series(ring, &ProductSpec::default().with(PochhammerFactor::euler(25, 1)?), order)?;
    outer.checked_mul(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::product::pochhammer_series;
    use crate::{Exact, ExactSeries};
    use num_traits::One;

    #[test]
    fn a_times_b_is_one() {
        let z = Exact::new();
        let n = 400;
        let prod = &ramanujan_a(&z, n).unwrap() * &ramanujan_b(&z, n).unwrap();
        assert_eq!(prod, ExactSeries::one(z, n));
        assert!(ramanujan_a(&z, 4).unwrap().coeffs()[0].is_one());
    }

    #[test]
    fn five_dissection_of_euler_function() {
        let z = Exact::new();
        let n = 400;
        let lhs = pochhammer_series(&z, &PochhammerFactor::euler(1, 1).unwrap(), n).unwrap();
        assert_eq!(five_dissection_rhs(&z, n).unwrap(), lhs);
    }
}
