//! Brute-force oracles, independent of the series engine.
//!
//! Partition counts are enumerated directly (nonincreasing part sequences) or
//! computed by Euler's pentagonal recurrence; neither touches
//! [`TruncatedSeries`](crate::TruncatedSeries).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{is_prime, mod_pow};
use crate::error::{Error, Result};

/// Largest `n` accepted by the enumeration oracles.
pub const ENUMERATION_LIMIT: u64 = 60;

/// Counts partitions of `n` whose parts are all at most `max_part` and pass
/// `allowed`.
fn enumerate(n: u64, max_part: u64, allowed: &dyn Fn(u64) -> bool) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n)).filter(|&part| allowed(part)).map(|part| enumerate(n - part, part, allowed)).sum()
}

/// `p(n)` by enumerating every partition of `n`.
pub fn count_partitions_bruteforce(n: u64) -> Result<u64> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::BudgetExceeded { n, limit: ENUMERATION_LIMIT });
    }
    Ok(enumerate(n, n, &|_| true))
}

/// `b_ℓ(n)`: partitions of `n` with no part divisible by `ℓ`.
pub fn count_l_regular_bruteforce(l: u64, n: u64) -> Result<u64> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("ℓ must be at least 2, got {l}")));
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::BudgetExceeded { n, limit: ENUMERATION_LIMIT });
    }
    Ok(enumerate(n, n, &|part| part % l != 0))
}

/// `p(0..=n_max)` from
/// `p(n) = Σ_{k≥1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_euler_recurrence(n_max: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    p.push(BigInt::from(1));
    for n in 1..=n_max {
        let mut total = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        p.push(total);
    }
    p
}

/// Legendre symbol `(a/p)` by Euler's criterion `a^((p-1)/2) mod p`.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// True iff `a` is a quadratic nonresidue modulo the odd prime `p`.
pub fn is_quadratic_nonresidue(a: i64, p: u64) -> Result<bool> {
    Ok(legendre_symbol(a, p)? == -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bruteforce_small_values() {
        assert_eq!(count_partitions_bruteforce(0).unwrap(), 1);
        assert_eq!(count_partitions_bruteforce(4).unwrap(), 5);
        assert_eq!(count_partitions_bruteforce(9).unwrap(), 30);
        assert_eq!(count_partitions_bruteforce(9).unwrap() % 5, 0);
        assert!(matches!(count_partitions_bruteforce(61), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn l_regular_small_values() {
        assert_eq!(count_l_regular_bruteforce(5, 5).unwrap(), 6);
        assert_eq!(count_l_regular_bruteforce(2, 0).unwrap(), 1);
        // Distinct parts = odd parts: b_2(n) = q(n).
        assert_eq!(count_l_regular_bruteforce(2, 10).unwrap(), 10);
        assert!(count_l_regular_bruteforce(1, 3).is_err());
        assert!(count_l_regular_bruteforce(3, 100).is_err());
    }

    #[test]
    fn recurrence_matches_enumeration() {
        let p = partition_euler_recurrence(40);
        assert_eq!(p[..6], [1, 1, 2, 3, 5, 7].map(BigInt::from));
        for n in 0..=40u64 {
            assert_eq!(p[n as usize], BigInt::from(count_partitions_bruteforce(n).unwrap()));
        }
    }

    #[test]
    fn recurrence_ramanujan_congruences() {
        let p = partition_euler_recurrence(11 * 50 + 6);
        for n in 0..=100 {
            assert!((&p[5 * n + 4] % 5u32).is_zero());
        }
        for n in 0..=50 {
            assert!((&p[11 * n + 6] % 11u32).is_zero());
        }
    }

    #[test]
    fn legendre_examples() {
        for p in [3u64, 5, 7, 97] {
            assert_eq!(legendre_symbol(1, p).unwrap(), 1);
        }
        assert_eq!(legendre_symbol(0, 5).unwrap(), 0);
        assert_eq!(legendre_symbol(-10, 17).unwrap(), -1);
        assert!(matches!(legendre_symbol(3, 9), Err(Error::NotPrime(9))));
        assert!(matches!(legendre_symbol(3, 2), Err(Error::NotPrime(2))));
    }

    #[test]
    fn legendre_matches_square_sets() {
        for p in (3..=97).filter(|&p| is_prime(p)) {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 0..p {
                let expected = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(a as i64, p).unwrap(), expected, "({a}/{p})");
            }
        }
    }

    #[test]
    fn legendre_is_multiplicative() {
        let primes: Vec<u64> = (5..=97).filter(|&p| is_prime(p)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let p = primes[rng.gen_range(0..primes.len())];
            let a = rng.gen_range(-1000i64..1000);
            let b = rng.gen_range(-1000i64..1000);
            assert_eq!(
                legendre_symbol(a * b, p).unwrap(),
                legendre_symbol(a, p).unwrap() * legendre_symbol(b, p).unwrap()
            );
        }
    }
}
