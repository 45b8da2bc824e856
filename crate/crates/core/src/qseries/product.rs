//! Pochhammer symbols `(±q^a; q^b)∞^e` and finite products of them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::CoefficientRing;
use crate::series::TruncatedSeries;

use super::theta::theta_f;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self^k` for a nonnegative exponent given by its parity.
    pub(crate) fn pow_parity(self, k: i128) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus if k.rem_euclid(2) == 0 => 1,
            Sign::Minus => -1,
        }
    }
}

/// One factor `(sign·q^offset; q^step)∞^exponent`, where `Sign::Minus`
/// denotes `(q^a; q^b)∞ = ∏(1 - q^{a+jb})` and `Sign::Plus` denotes
/// `(-q^a; q^b)∞ = ∏(1 + q^{a+jb})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PochhammerFactor {
    sign: Sign,
    offset: u64,
    step: u64,
    exponent: i64,
}

impl PochhammerFactor {
    pub fn new(sign: Sign, offset: u64, step: u64, exponent: i64) -> Result<Self> {
        if offset == 0 || step == 0 {
            return Err(Error::InvalidParameter(format!(
                "Pochhammer offset and step must be at least 1, got ({offset}, {step})"
            )));
        }
        Ok(PochhammerFactor { sign, offset, step, exponent })
    }

    /// `(q^a; q^b)∞^e`.
    pub fn plain(offset: u64, step: u64, exponent: i64) -> Result<Self> {
        Self::new(Sign::Minus, offset, step, exponent)
    }

    /// `(-q^a; q^b)∞^e`.
    pub fn negated(offset: u64, step: u64, exponent: i64) -> Result<Self> {
        Self::new(Sign::Plus, offset, step, exponent)
    }

    /// `(q^s; q^s)∞^e`.
    pub fn euler(step: u64, exponent: i64) -> Result<Self> {
        Self::plain(step, step, exponent)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }
}

impl fmt::Display for PochhammerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let minus = if self.sign == Sign::Plus { "-" } else { "" };
        let pw = |k: u64| if k == 1 { "q".to_string() } else { format!("q^{k}") };
        write!(f, "({minus}{};{})", pw(self.offset), pw(self.step))?;
        if self.exponent != 1 {
            write!(f, "^{}", self.exponent)?;
        }
        Ok(())
    }
}

/// A finite product of Pochhammer factors; empty means the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductSpec {
    factors: Vec<PochhammerFactor>,
}

impl ProductSpec {
    pub fn new(factors: Vec<PochhammerFactor>) -> Self {
        ProductSpec { factors }
    }

    pub fn factors(&self) -> &[PochhammerFactor] {
        &self.factors
    }

    pub fn with(mut self, factor: PochhammerFactor) -> Self {
        self.factors.push(factor);
        self
    }

    /// Product of `(q^s; q^s)∞^e` over the given `(s, e)` pairs.
    pub fn eta_quotient(parts: &[(u64, i64)]) -> Result<Self> {
        let factors = parts.iter().map(|&(s, e)| PochhammerFactor::euler(s, e)).collect::<Result<_>>()?;
        Ok(ProductSpec { factors })
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Parses `(a,b)^e*(-a,b)^e*...`; `(a,b)` is `(q^a;q^b)∞` and `(-a,b)` is
/// `(-q^a;q^b)∞`. The exponent defaults to 1.
impl FromStr for ProductSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "product", input: s.to_string() };
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(ProductSpec::default());
        }
        let mut factors = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let inner_end = part.find(')').ok_or_else(bad)?;
            let inner = part.strip_prefix('(').ok_or_else(bad)?;
            let inner = &inner[..inner_end - 1];
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let a = a.trim();
            let (sign, a) = match a.strip_prefix('-') {
                Some(rest) => (Sign::Plus, rest),
                None => (Sign::Minus, a),
            };
            let offset: u64 = a.parse().map_err(|_| bad())?;
            let step: u64 = b.trim().parse().map_err(|_| bad())?;
            let rest = part[inner_end + 1..].trim();
            let exponent = match rest.strip_prefix('^') {
                Some(e) => e.trim().parse().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            factors.push(PochhammerFactor::new(sign, offset, step, exponent)?);
        }
        Ok(ProductSpec { factors })
    }
}

/// Expands `(±q^a; q^b)∞^e` to order `order` by multiplying out
/// `(1 ± q^{a+jb})` for every `a + jb <= order`.
pub fn pochhammer_series<R: CoefficientRing>(
    ring: &R,
    factor: &PochhammerFactor,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    let one = TruncatedSeries::one(ring.clone(), order);
    if factor.exponent == 0 {
        return Ok(one);
    }
    let mut c = one.clone().into_coeffs();
    let mut m = factor.offset as usize;
    while m <= order {
        for n in (m..=order).rev() {
            if ring.is_zero(&c[n - m]) {
                continue;
            }
            c[n] = match factor.sign {
                Sign::Plus => ring.add(&c[n], &c[n - m]),
                Sign::Minus => ring.sub(&c[n], &c[n - m]),
            };
        }
        m += factor.step as usize;
    }
    let base = TruncatedSeries::from_raw(ring.clone(), c);
    one.mul_pow(&base, factor.exponent)
}

/// Expands a product of Pochhammer factors, each by
/// [`pochhammer_series`].
pub fn product_series<R: CoefficientRing>(ring: &R, spec: &ProductSpec, order: usize) -> Result<TruncatedSeries<R>> {
    let mut acc = TruncatedSeries::one(ring.clone(), order);
    for f in &spec.factors {
        let unit = PochhammerFactor { exponent: 1, ..*f };
        let base = pochhammer_series(ring, &unit, order)?;
        acc = acc.mul_pow(&base, f.exponent)?;
    }
    Ok(acc)
}

/// `(q^s; q^s)∞` through its pentagonal-number expansion
/// `Σ (-1)^n q^{s·n(3n-1)/2}`.
pub fn euler_function<R: CoefficientRing>(ring: &R, step: u64, order: usize) -> Result<TruncatedSeries<R>> {
    theta_f(ring, step, 2 * step, Sign::Minus, Sign::Minus, order)
}

/// `∏ (q^s; q^s)∞^e` built from sparse pentagonal expansions.
pub fn eta_quotient<R: CoefficientRing>(ring: &R, parts: &[(u64, i64)], order: usize) -> Result<TruncatedSeries<R>> {
    let mut acc = TruncatedSeries::one(ring.clone(), order);
    // Multiply before dividing so the accumulator stays sparse as long as possible.
    let mut sorted = parts.to_vec();
    sorted.sort_by_key(|&(_, e)| std::cmp::Reverse(e));
    for (s, e) in sorted {
        if s == 0 {
            return Err(Error::InvalidParameter("eta step must be at least 1".into()));
        }
        if e == 0 {
            continue;
        }
        acc = acc.mul_pow(&euler_function(ring, s, order)?, e)?;
    }
    Ok(acc)
}
