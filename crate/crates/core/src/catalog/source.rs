use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::product::{eta_quotient, product_series, ProductSpec, Sign};
use crate::qseries::ramanujan::{ramanujan_a_spec, ramanujan_b_spec};
use crate::ring::CoefficientRing;
use crate::series::TruncatedSeries;

/// A series a claim talks about.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesSource {
    /// `Σ p(n) q^n`
    Partition,
    /// `Σ b_ℓ(n) q^n`
    LRegular(u64),
    /// `Σ Δ_k(n) q^n`
    BrokenDiamond(u64),
    /// `Σ 𝔅_k(n) q^n`
    Bracelet(u64),
    Product(ProductSpec),
    RamanujanA,
    RamanujanB,
}

impl SeriesSource {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            SeriesSource::LRegular(l) if l < 2 => bad(format!("ℓ-regular needs ℓ >= 2, got {l}")),
            SeriesSource::BrokenDiamond(0) => bad("broken k-diamond needs k >= 1".into()),
            SeriesSource::Bracelet(k) if k < 3 => bad(format!("k dots bracelet needs k >= 3, got {k}")),
            _ => Ok(()),
        }
    }

    /// Eta-quotient form `∏ (q^s;q^s)∞^e`, when the source has one.
    ///
    /// Every `(-q^a;q^a)∞` is rewritten as `(q^{2a};q^{2a})∞ / (q^a;q^a)∞`.
    pub fn eta_form(&self) -> Option<Vec<(u64, i64)>> {
        match self {
            SeriesSource::Partition => Some(vec![(1, -1)]),
            SeriesSource::LRegular(l) => Some(vec![(*l, 1), (1, -1)]),
            SeriesSource::BrokenDiamond(k) => {
                let m = 2 * k + 1;
                Some(vec![(2, 1), (1, -3), (m, 1), (2 * m, -1)])
            }
            SeriesSource::Bracelet(k) => Some(vec![(2, 1), (*k, 1), (1, -(*k as i64)), (2 * k, -1)]),
            SeriesSource::Product(spec) => spec
                .factors()
                .iter()
                .map(|f| (f.sign() == Sign::Minus && f.offset() == f.step()).then_some((f.step(), f.exponent())))
                .collect(),
            SeriesSource::RamanujanA | SeriesSource::RamanujanB => None,
        }
    }

    /// Expands the source to `order` in `ring`.
    ///
    /// Sources with an eta form are built from sparse pentagonal expansions;
    /// the rest multiply out their Pochhammer factors.
    pub fn expand<R: CoefficientRing>(&self, ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
        self.validate()?;
        if let Some(parts) = self.eta_form() {
            return eta_quotient(ring, &parts, order);
        }
        match self {
            SeriesSource::Product(spec) => product_series(ring, spec, order),
            SeriesSource::RamanujanA => product_series(ring, &ramanujan_a_spec(), order),
            SeriesSource::RamanujanB => product_series(ring, &ramanujan_b_spec(), order),
            _ => unreachable!("eta form covers the counting functions"),
        }
    }

    /// Name of the counting function in report notation, e.g. `B_5`.
    pub fn label(&self) -> String {
        match self {
            SeriesSource::Partition => "p".into(),
            SeriesSource::LRegular(l) => format!("b_{l}"),
            SeriesSource::BrokenDiamond(k) => format!("Δ_{k}"),
            SeriesSource::Bracelet(k) => format!("B_{k}"),
            SeriesSource::Product(spec) => spec.to_string(),
            SeriesSource::RamanujanA => "a".into(),
            SeriesSource::RamanujanB => "b".into(),
        }
    }
}

impl fmt::Display for SeriesSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesSource::Partition => write!(f, "partition"),
            SeriesSource::LRegular(l) => write!(f, "lregular:{l}"),
            SeriesSource::BrokenDiamond(k) => write!(f, "diamond:{k}"),
            SeriesSource::Bracelet(k) => write!(f, "bracelet:{k}"),
            SeriesSource::Product(spec) => write!(f, "product:{spec}"),
            SeriesSource::RamanujanA => write!(f, "ramanujan-a"),
            SeriesSource::RamanujanB => write!(f, "ramanujan-b"),
        }
    }
}

/// Parses the command-line source syntax: `partition`, `euler`,
/// `euler:<s>`, `lregular:<ℓ>`, `diamond:<k>`, `bracelet:<k>`,
/// `ramanujan-a`, `ramanujan-b` and `product:<spec>`.
impl FromStr for SeriesSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "series source", input: s.to_string() };
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<u64> { a.ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let source = match name {
            "partition" | "p" if arg.is_none() => SeriesSource::Partition,
            "euler" => {
                let step = if arg.is_some() { num(arg)? } else { 1 };
                SeriesSource::Product(ProductSpec::eta_quotient(&[(step, 1)])?)
            }
            "lregular" => SeriesSource::LRegular(num(arg)?),
            "diamond" => SeriesSource::BrokenDiamond(num(arg)?),
            "bracelet" => SeriesSource::Bracelet(num(arg)?),
            "product" => SeriesSource::Product(arg.ok_or_else(bad)?.parse()?),
            "ramanujan-a" if arg.is_none() => SeriesSource::RamanujanA,
            "ramanujan-b" if arg.is_none() => SeriesSource::RamanujanB,
            _ => return Err(bad()),
        };
        source.validate()?;
        Ok(source)
    }
}
