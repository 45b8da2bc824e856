//! Congruences and identities as checkable claim objects.
//!
//! A [`CongruenceClaim`] names a series, an arithmetic progression `An + B`
//! and a ring, and says one of three things about the dissected series:
//! it vanishes, it is congruent to another (dissected) series, or it equals
//! another series exactly. Parameterized families live in [`families`].

pub mod families;
mod source;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{CoefficientRing, RingKind};
use crate::series::TruncatedSeries;

pub use families::{
    builtin_claims, default_claims, parse_claim_selector, Family, FamilyInstantiator, Params, Selected,
};
pub use source::SeriesSource;

/// The progression `step·n + residue`, `0 <= residue < step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Progression {
    step: u64,
    residue: u64,
}

impl Progression {
    pub fn new(step: u64, residue: u64) -> Result<Self> {
        if step == 0 || residue >= step {
            return Err(Error::InvalidProgression { step, residue });
        }
        Ok(Progression { step, residue })
    }

    /// Reduces `step·n + residue` with an arbitrary `residue >= 0` to a
    /// canonical progression plus the index shift `residue / step`.
    pub fn normalized(step: u64, residue: u64) -> Result<(Self, u64)> {
        if step == 0 {
            return Err(Error::InvalidProgression { step, residue });
        }
        Ok((Progression { step, residue: residue % step }, residue / step))
    }

    pub fn identity() -> Self {
        Progression { step: 1, residue: 0 }
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    /// Series index of the `n`-th term.
    pub fn index(&self, n: u64) -> u64 {
        self.step * n + self.residue
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.step, self.residue) {
            (1, 0) => write!(f, "n"),
            (1, b) => write!(f, "n+{b}"),
            (a, 0) => write!(f, "{a}n"),
            (a, b) => write!(f, "{a}n+{b}"),
        }
    }
}

/// Small expression language for the right-hand sides of claims.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesExpr {
    One,
    Source(SeriesSource),
    Sum(Vec<SeriesExpr>),
    Product(Vec<SeriesExpr>),
    Scale(i64, Box<SeriesExpr>),
    /// Multiplication by `q^t`.
    Shift(u64, Box<SeriesExpr>),
}

impl SeriesExpr {
    pub fn source(s: SeriesSource) -> Self {
        SeriesExpr::Source(s)
    }

    /// Every source the expression mentions.
    pub fn sources(&self) -> Vec<&SeriesSource> {
        match self {
            SeriesExpr::One => vec![],
            SeriesExpr::Source(s) => vec![s],
            SeriesExpr::Sum(xs) | SeriesExpr::Product(xs) => xs.iter().flat_map(|x| x.sources()).collect(),
            SeriesExpr::Scale(_, x) | SeriesExpr::Shift(_, x) => x.sources(),
        }
    }

    /// Evaluates to `order`, obtaining source expansions through `fetch`.
    pub fn evaluate<R, F>(&self, ring: &R, order: usize, fetch: &F) -> Result<TruncatedSeries<R>>
    where
        R: CoefficientRing,
        F: Fn(&SeriesSource, usize) -> Result<TruncatedSeries<R>>,
    {
        match self {
            SeriesExpr::One => Ok(TruncatedSeries::one(ring.clone(), order)),
            SeriesExpr::Source(s) => Ok(fetch(s, order)?.truncate(order)),
            SeriesExpr::Sum(xs) => {
                let mut acc = TruncatedSeries::zero(ring.clone(), order);
                for x in xs {
                    acc = acc.checked_add(&x.evaluate(ring, order, fetch)?)?;
                }
                Ok(acc)
            }
            SeriesExpr::Product(xs) => {
                let mut acc = TruncatedSeries::one(ring.clone(), order);
                for x in xs {
                    acc = acc.checked_mul(&x.evaluate(ring, order, fetch)?)?;
                }
                Ok(acc)
            }
            SeriesExpr::Scale(c, x) => Ok(x.evaluate(ring, order, fetch)?.scale_i64(*c)),
            SeriesExpr::Shift(t, x) => Ok(x.evaluate(ring, order, fetch)?.shift(*t as usize)),
        }
    }

    /// Evaluates with every source expanded on demand.
    pub fn expand<R: CoefficientRing>(&self, ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
        self.evaluate(ring, order, &|s: &SeriesSource, n| s.expand(ring, n))
    }
}

impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[SeriesExpr], sep: &str| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep);
        match self {
            SeriesExpr::One => write!(f, "1"),
            SeriesExpr::Source(SeriesSource::Product(spec)) => write!(f, "{spec}"),
            SeriesExpr::Source(s) => write!(f, "Σ {}(n) q^n", s.label()),
            SeriesExpr::Sum(xs) => write!(f, "({})", join(xs, " + ")),
            SeriesExpr::Product(xs) => write!(f, "{}", join(xs, "·")),
            SeriesExpr::Scale(c, x) => write!(f, "{c}·{x}"),
            SeriesExpr::Shift(t, x) => write!(f, "q^{t}·{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimKind {
    /// `coefficient(A·n + B) ≡ 0 (mod M)`.
    Vanishing,
    /// `Σ c(A·n + B) q^n ≡ sign · Σ r(A'·n + B') q^n (mod M)`.
    SeriesCongruence { rhs: SeriesExpr, rhs_progression: Progression, sign: i64 },
    /// Equality of the left-hand series and `rhs` over the exact integers.
    ExactIdentity { rhs: SeriesExpr },
}

/// Where a claim comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// Established earlier in the literature; kept as a regression anchor.
    Imported,
    Original,
}

/// A concrete, checkable statement about a dissected series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub id: String,
    /// `None` for ad-hoc claims built outside the catalog.
    pub family: Option<Family>,
    pub params: Params,
    pub lhs: SeriesExpr,
    pub progression: Progression,
    /// Term `n` of the claim sits at series index
    /// `progression.index(n + index_offset)`.
    pub index_offset: u64,
    pub ring: RingKind,
    pub kind: ClaimKind,
    /// First `n` the claim covers.
    pub n_min: u64,
    /// Whether term `n = 0` must be a unit (guards a claim that starts at
    /// `n = 1` against passing on an identically zero series).
    pub unit_at_zero: bool,
    pub default_n_max: u64,
    pub origin: Origin,
}

impl CongruenceClaim {
    /// An ad-hoc claim `source(step·n + residue) ≡ 0 (mod modulus)` outside
    /// the catalog, checked for `n <= n_max` by default.
    pub fn vanishing(
        id: &str,
        source: SeriesSource,
        step: u64,
        residue: u64,
        modulus: u64,
        n_max: u64,
    ) -> Result<Self> {
        source.validate()?;
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let (progression, index_offset) = Progression::normalized(step, residue)?;
        Ok(CongruenceClaim {
            id: id.to_string(),
            family: None,
            params: Params::new(),
            lhs: SeriesExpr::source(source),
            progression,
            index_offset,
            ring: RingKind::Mod(modulus),
            kind: ClaimKind::Vanishing,
            n_min: 0,
            unit_at_zero: false,
            default_n_max: n_max,
            origin: Origin::Original,
        })
    }

    /// Modulus of the claim, `None` for exact identities.
    pub fn modulus(&self) -> Option<u64> {
        match self.ring {
            RingKind::Exact => None,
            RingKind::Mod(m) => Some(m),
        }
    }

    /// Highest series index of the left-hand side needed for `n <= n_max`.
    pub fn required_truncation(&self, n_max: u64) -> u64 {
        self.progression.index(n_max + self.index_offset)
    }

    /// Highest index of the right-hand series needed for `n <= n_max`.
    pub fn rhs_truncation(&self, n_max: u64) -> Option<u64> {
        match &self.kind {
            ClaimKind::Vanishing => None,
            ClaimKind::SeriesCongruence { rhs_progression, .. } => Some(rhs_progression.index(n_max)),
            ClaimKind::ExactIdentity { .. } => Some(n_max),
        }
    }

    /// The statement in the usual notation, e.g.
    /// `B_5(10n+6) ≡ 0 (mod 2)`.
    pub fn notation(&self) -> String {
        let shown = Progression { step: self.progression.step, residue: 0 };
        let residue = self.progression.residue + self.progression.step * self.index_offset;
        let arg = if residue == 0 { shown.to_string() } else { format!("{}+{residue}", shown) };
        let name = match &self.lhs {
            SeriesExpr::Source(s) => s.label(),
            other => other.to_string(),
        };
        let modulus = self.modulus().map(|m| format!(" (mod {m})")).unwrap_or_default();
        match &self.kind {
            ClaimKind::Vanishing => format!("{name}({arg}) ≡ 0{modulus}"),
            ClaimKind::SeriesCongruence { rhs, rhs_progression, sign } => {
                let rhs_text = match rhs {
                    SeriesExpr::Source(s) if *rhs_progression != Progression::identity() => {
                        format!("Σ {}({rhs_progression}) q^n", s.label())
                    }
                    other => other.to_string(),
                };
                let sign = if *sign < 0 { "-" } else { "" };
                format!("Σ {name}({arg}) q^n ≡ {sign}{rhs_text}{modulus}")
            }
            ClaimKind::ExactIdentity { rhs } => format!("{} = {rhs}", self.lhs),
        }
    }
}

/// `A·n_max + B`, the order needed to check a progression up to `n_max`.
pub fn required_truncation(progression: &Progression, n_max: u64) -> u64 {
    progression.index(n_max)
}
