//! The built-in claim families and their instantiation rules.
//!
//! Each [`Family`] turns a parameter set into a [`CongruenceClaim`] after
//! checking the parameter ranges under which the congruence holds. Residues given by
//! closed forms such as `((12i + p)p^{2α-1} - 1)/12` must divide exactly;
//! residues that reach past the step are folded back into `[0, A)` with the
//! surplus carried as an index offset.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::harness::DEFAULT_MOD_ORDER_CAP;
use crate::oracles::is_quadratic_nonresidue;
use crate::qseries::dissection::PrimeContext;
use crate::qseries::product::ProductSpec;
use crate::ring::RingKind;

use super::{ClaimKind, CongruenceClaim, Origin, Progression, SeriesExpr, SeriesSource};

/// Default number of progression terms checked per claim.
pub const DEFAULT_N_MAX: u64 = 200;

/// Named integer parameters of a claim (`p`, `r`, `a` for α, `i`, `j`, ...).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, name: &str, value: i64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Result<i64> {
        self.0.get(name).copied().ok_or_else(|| Error::InvalidParameter(format!("missing parameter `{name}`")))
    }

    fn get_u64(&self, name: &str) -> Result<u64> {
        let v = self.get(name)?;
        u64::try_from(v).map_err(|_| Error::InvalidParameter(format!("`{name}` must be nonnegative, got {v}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `p=5,r=2,a=1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Params::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse { what: "parameter", input: item.into() })?;
            let v: i64 = v.trim().parse().map_err(|_| Error::Parse { what: "parameter", input: item.into() })?;
            out.0.insert(k.trim().to_string(), v);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    C12,
    C13,
    C14,
    C15,
    C16,
    C17,
    C18,
    C19,
    C20,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Catalog entry describing one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInstantiator {
    pub family: Family,
    pub params: &'static [&'static str],
    pub statement: &'static str,
    pub origin: Origin,
}

impl FamilyInstantiator {
    pub fn instantiate(&self, params: &Params) -> Result<CongruenceClaim> {
        self.family.instantiate(params)
    }
}

/// Every family in catalog order.
pub fn builtin_claims() -> Vec<FamilyInstantiator> {
    Family::ALL.iter().map(|f| f.instantiator()).collect()
}

/// A claim selected for verification, or the reason it could not be built.
#[derive(Clone, Debug, PartialEq)]
pub enum Selected {
    Claim(Box<CongruenceClaim>),
    Rejected { id: String, family: Family, params: Params, error: Error },
}

impl Selected {
    fn from_result(family: Family, params: Params, r: Result<CongruenceClaim>) -> Self {
        match r {
            Ok(c) => Selected::Claim(Box::new(c)),
            Err(error) => Selected::Rejected { id: family.claim_id(&params), family, params, error },
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Selected::Claim(c) => &c.id,
            Selected::Rejected { id, .. } => id,
        }
    }
}

/// The default parameter grid of every family, instantiated.
pub fn default_claims() -> Vec<Selected> {
    Family::ALL.iter().flat_map(|f| f.select_defaults()).collect()
}

/// Resolves `C6` (the family's default grid) or `C15[p=5,r=2,a=1,i=1]`
/// (one instance).
pub fn parse_claim_selector(text: &str) -> Result<Vec<Selected>> {
    let text = text.trim();
    let (name, params) = match text.split_once('[') {
        Some((n, rest)) => {
            let inner = rest.strip_suffix(']').ok_or_else(|| Error::UnknownClaim(text.into()))?;
            (n, Some(Params::parse(inner)?))
        }
        None => (text, None),
    };
    let family = Family::ALL
        .iter()
        .copied()
        .find(|f| f.to_string().eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::UnknownClaim(text.into()))?;
    Ok(match params {
        Some(p) => {
            let r = family.instantiate(&p);
            vec![Selected::from_result(family, p, r)]
        }
        None => family.select_defaults(),
    })
}

fn pow(base: u64, exp: i64) -> Result<u64> {
    let exp = u32::try_from(exp).map_err(|_| Error::InvalidParameter(format!("negative exponent {exp}")))?;
    base.checked_pow(exp).ok_or_else(|| Error::InvalidParameter(format!("{base}^{exp} overflows")))
}

fn exact_div(num: i128, den: i128) -> Result<u64> {
    if num < 0 || num % den != 0 {
        return Err(Error::InvalidParameter(format!("residue {num}/{den} is not a nonnegative integer")));
    }
    u64::try_from(num / den).map_err(|_| Error::InvalidParameter("residue overflows".into()))
}

fn prime_at_least(p: u64, min: u64) -> Result<()> {
    if p < min || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p must be a prime >= {min}, got {p}")));
    }
    Ok(())
}

fn in_range(name: &str, v: i64, lo: i64, hi: i64) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::InvalidParameter(format!("{name} = {v} outside [{lo}, {hi}]")));
    }
    Ok(())
}

fn one_of(name: &str, v: i64, allowed: &[i64]) -> Result<()> {
    if !allowed.contains(&v) {
        return Err(Error::InvalidParameter(format!("{name} = {v} not in {allowed:?}")));
    }
    Ok(())
}

/// `ε_p^α`.
fn epsilon_power(p: u64, alpha: i64) -> Result<i64> {
    let eps = PrimeContext::new(p)?.epsilon();
    Ok(if alpha.rem_euclid(2) == 0 { 1 } else { eps })
}

fn eta(parts: &[(u64, i64)]) -> Result<SeriesExpr> {
    Ok(SeriesExpr::source(SeriesSource::Product(ProductSpec::eta_quotient(parts)?)))
}

/// Largest `n <= preferred` whose index `A·n + B` fits in the default cap.
fn fitted_n_max(preferred: u64, progression: &Progression, offset: u64) -> u64 {
    let fits = DEFAULT_MOD_ORDER_CAP.saturating_sub(progression.residue()) / progression.step();
    preferred.min(fits.saturating_sub(offset))
}

struct Draft {
    lhs: SeriesSource,
    step: u64,
    residue: u64,
    ring: RingKind,
    kind: ClaimKind,
    n_min: u64,
    unit_at_zero: bool,
    n_max: u64,
}

impl Draft {
    fn vanishing(lhs: SeriesSource, step: u64, residue: u64, modulus: u64, n_max: u64) -> Self {
        Draft {
            lhs,
            step,
            residue,
            ring: RingKind::Mod(modulus),
            kind: ClaimKind::Vanishing,
            n_min: 0,
            unit_at_zero: false,
            n_max,
        }
    }

    fn congruence(
        lhs: SeriesSource,
        step: u64,
        residue: u64,
        modulus: u64,
        rhs: SeriesExpr,
        sign: i64,
        n_max: u64,
    ) -> Self {
        Draft {
            kind: ClaimKind::SeriesCongruence { rhs, rhs_progression: Progression::identity(), sign },
            ..Draft::vanishing(lhs, step, residue, modulus, n_max)
        }
    }
}

impl Family {
    pub const ALL: [Family; 20] = [
        Family::C1,
        Family::C2,
        Family::C3,
        Family::C4,
        Family::C5,
        Family::C6,
        Family::C7,
        Family::C8,
        Family::C9,
        Family::C10,
        Family::C11,
        Family::C12,
        Family::C13,
        Family::C14,
        Family::C15,
        Family::C16,
        Family::C17,
        Family::C18,
        Family::C19,
        Family::C20,
    ];

    pub fn param_names(self) -> &'static [&'static str] {
        use Family::*;
        match self {
            C1 | C7 | C8 | C9 => &[],
            C2 => &["p", "r"],
            C3 => &["p", "m", "s"],
            C4 => &["m", "l"],
            C5 | C20 => &["p"],
            C18 => &["p", "a"],
            C6 => &["b"],
            C10 | C12 => &["p", "a", "i"],
            C11 | C13 => &["c", "a"],
            C14 => &["p", "r", "a"],
            C15 => &["p", "r", "a", "i"],
            C16 => &["p", "r", "a", "j"],
            C17 => &["p", "a", "v"],
            C19 => &["p", "a"],
        }
    }

    pub fn statement(self) -> &'static str {
        use Family::*;
        match self {
            C1 => "Δ_1(2n+1) ≡ 0 (mod 3)",
            C2 => "B_{p^r}(2n+1) ≡ 0 (mod p)",
            C3 => "B_{pm}(pn+s) ≡ 0 (mod p), 12s+1 a nonresidue mod p",
            C4 => "B_{2^m l}(2n+1) ≡ 0 (mod 2^m), l odd",
            C5 => "B_5(10n+7) ≡ 0 (mod 25), B_7(14n+11) ≡ 0 (mod 49), B_11(22n+21) ≡ 0 (mod 121)",
            C6 => "B_5(10n+6) ≡ B_5(10n+8) ≡ 0 (mod 2)",
            C7 => "Σ B_5(10n+2) q^n ≡ Σ b_5(n) q^n (mod 2)",
            C8 => "Σ b_5(2n) q^n ≡ (q^2;q^2)∞ (mod 2)",
            C9 => "(q;q)∞ = (q^25;q^25)∞ (a(q) - q - q^2 b(q))",
            C10 => "b_5(4p^{2α}n + ((24i+7p)p^{2α-1}-1)/6) ≡ 0 (mod 2), (-10/p) = -1",
            C11 => "b_5 at 4·5^{2α+1}n + (c·5^{2α}-1)/6 (c = 31, 79) and 4·5^{2α+2}n + (c·5^{2α+1}-1)/6 (c = 83, 107) ≡ 0 (mod 2)",
            C12 => "B_5(40p^{2α}n + (5(24i+7p)p^{2α-1}+1)/3) ≡ 0 (mod 2), (-10/p) = -1",
            C13 => "B_5 at 8·5^{2α}n + (c·5^{2α-1}+1)/3 (c = 31, 79) and 8·5^{2α+1}n + (c·5^{2α}+1)/3 (c = 83, 107) ≡ 0 (mod 2)",
            C14 => "Σ B_{p^r}(p^{2α-1}n + (p^{2α}-1)/12) q^n ≡ ε_p^α (q^{2p};q^{2p})∞/(q^{2p^{r-2α+1}};q^{2p^{r-2α+1}})∞ (mod p)",
            C15 => "B_{p^r}(p^{2α}n + ((12i+p)p^{2α-1}-1)/12) ≡ 0 (mod p), 1 <= α <= r/2",
            C16 => "B_{p^r}(p^{2α+1}n + ((12j+1)p^{2α}-1)/12) ≡ 0 (mod p), 12j+1 a nonresidue, 1 <= α <= (r-1)/2",
            C17 => "Σ B_{p^{2α-1}}(2p^{2α-1}n + (p^{2α}-1)/12) q^n ≡ ε_p^α Σ b_p(n) q^n ≡ ε_p^α (q^p;q^p)∞ Σ p(n) q^n (mod p)",
            C18 => "B_{p^{2α-1}}(2p^{2α}n + (c·p^{2α-1}-1)/12) ≡ 0 (mod p), (p, c) in {(5,101), (7,127), (11,155)}",
            C19 => "B_{p^{2α}}(p^{2α-1}n + (p^{2α}-1)/12) ≡ 0 (mod p), n >= 1",
            C20 => "p(5n+4) ≡ 0 (mod 5), p(7n+5) ≡ 0 (mod 7), p(11n+6) ≡ 0 (mod 11)",
        }
    }

    pub fn origin(self) -> Origin {
        use Family::*;
        match self {
            C1 | C2 | C3 | C4 | C5 | C10 | C11 | C20 => Origin::Imported,
            _ => Origin::Original,
        }
    }

    pub fn instantiator(self) -> FamilyInstantiator {
        FamilyInstantiator {
            family: self,
            params: self.param_names(),
            statement: self.statement(),
            origin: self.origin(),
        }
    }

    /// Stable claim id, e.g. `C15[p=5,r=2,a=1,i=1]`.
    pub fn claim_id(self, params: &Params) -> String {
        let names = self.param_names();
        if names.is_empty() {
            return self.to_string();
        }
        let parts: Vec<String> = names
            .iter()
            .map(|n| match params.get(n) {
                Ok(v) => format!("{n}={v}"),
                Err(_) => format!("{n}=?"),
            })
            .collect();
        format!("{self}[{}]", parts.join(","))
    }

    /// Parameter sets verified by default.
    pub fn default_grid(self) -> Vec<Params> {
        use Family::*;
        let p = Params::new;
        match self {
            C1 | C7 | C8 | C9 => vec![p()],
            C2 => [(5, 1), (7, 1), (3, 2)].iter().map(|&(a, b)| p().with("p", a).with("r", b)).collect(),
            C3 => [1, 3].iter().map(|&s| p().with("p", 5).with("m", 2).with("s", s)).collect(),
            C4 => vec![p().with("m", 2).with("l", 3)],
            C5 | C20 => [5, 7, 11].iter().map(|&q| p().with("p", q)).collect(),
            C6 => [6, 8].iter().map(|&b| p().with("b", b)).collect(),
            C10 => [1, 6].iter().map(|&i| p().with("p", 17).with("a", 1).with("i", i)).collect(),
            C11 => [0, 1].iter().flat_map(|&a| [31, 79, 83, 107].map(|c| p().with("c", c).with("a", a))).collect(),
            C12 => vec![p().with("p", 17).with("a", 1).with("i", 6)],
            C13 => [31, 79, 83, 107].iter().map(|&c| p().with("c", c).with("a", 1)).collect(),
            C14 => [(1, 1), (3, 1), (3, 2)].iter().map(|&(r, a)| p().with("p", 5).with("r", r).with("a", a)).collect(),
            C15 => (1..=4).map(|i| p().with("p", 5).with("r", 2).with("a", 1).with("i", i)).collect(),
            C16 => [1, 3].iter().map(|&j| p().with("p", 5).with("r", 3).with("a", 1).with("j", j)).collect(),
            C17 => [1, 2].iter().map(|&v| p().with("p", 5).with("a", 1).with("v", v)).collect(),
            C18 => [5, 7, 11].iter().map(|&q| p().with("p", q).with("a", 1)).collect(),
            C19 => vec![p().with("p", 5).with("a", 1)],
        }
    }

    fn select_defaults(self) -> Vec<Selected> {
        self.default_grid()
            .into_iter()
            .map(|p| {
                let r = self.instantiate(&p);
                Selected::from_result(self, p, r)
            })
            .collect()
    }

    /// Builds the claim for one parameter set.
    pub fn instantiate(self, params: &Params) -> Result<CongruenceClaim> {
        let names = self.param_names();
        if let Some((extra, _)) = params.iter().find(|(k, _)| !names.contains(k)) {
            return Err(Error::InvalidParameter(format!("{self} takes no parameter `{extra}`")));
        }
        let draft = self.draft(params)?;
        let (progression, index_offset) = Progression::normalized(draft.step, draft.residue)?;
        let default_n_max = match draft.ring {
            RingKind::Exact => draft.n_max,
            RingKind::Mod(_) => fitted_n_max(draft.n_max, &progression, index_offset),
        };
        Ok(CongruenceClaim {
            id: self.claim_id(params),
            family: Some(self),
            params: params.clone(),
            lhs: SeriesExpr::source(draft.lhs),
            progression,
            index_offset,
            ring: draft.ring,
            kind: draft.kind,
            n_min: draft.n_min,
            unit_at_zero: draft.unit_at_zero,
            default_n_max,
            origin: self.origin(),
        })
    }

    fn draft(self, params: &Params) -> Result<Draft> {
        use Family::*;
        use SeriesSource::*;
        Ok(match self {
            C1 => Draft::vanishing(BrokenDiamond(1), 2, 1, 3, 150),
            C2 => {
                let (p, r) = (params.get_u64("p")?, params.get("r")?);
                prime_at_least(p, 2)?;
                in_range("r", r, 1, 64)?;
                let k = pow(p, r)?;
                if k < 3 {
                    return Err(Error::InvalidParameter(format!("k = p^r = {k} must be at least 3")));
                }
                Draft::vanishing(Bracelet(k), 2, 1, p, DEFAULT_N_MAX)
            }
            C3 => {
                let (p, m, s) = (params.get_u64("p")?, params.get_u64("m")?, params.get("s")?);
                prime_at_least(p, 5)?;
                in_range("m", m as i64, 1, i64::MAX)?;
                in_range("s", s, 1, p as i64 - 1)?;
                if !is_quadratic_nonresidue(12 * s + 1, p)? {
                    return Err(Error::InvalidParameter(format!("12s+1 = {} is not a nonresidue mod {p}", 12 * s + 1)));
                }
                let k = p.checked_mul(m).ok_or_else(|| Error::InvalidParameter("k overflows".into()))?;
                Draft::vanishing(Bracelet(k), p, s as u64, p, 100)
            }
            C4 => {
                let (m, l) = (params.get("m")?, params.get_u64("l")?);
                in_range("m", m, 1, 31)?;
                if l % 2 == 0 {
                    return Err(Error::InvalidParameter(format!("l = {l} must be odd")));
                }
                let two_m = pow(2, m)?;
                let k = two_m.checked_mul(l).ok_or_else(|| Error::InvalidParameter("k overflows".into()))?;
                if k < 3 {
                    return Err(Error::InvalidParameter(format!("k = 2^m·l = {k} must be at least 3")));
                }
                Draft::vanishing(Bracelet(k), 2, 1, two_m, DEFAULT_N_MAX)
            }
            C5 => {
                let p = params.get("p")?;
                one_of("p", p, &[5, 7, 11])?;
                let (step, residue) = match p {
                    5 => (10, 7),
                    7 => (14, 11),
                    _ => (22, 21),
                };
                let p = p as u64;
                Draft::vanishing(Bracelet(p), step, residue, p * p, 100)
            }
            C6 => {
                let b = params.get("b")?;
                one_of("b", b, &[6, 8])?;
                Draft::vanishing(Bracelet(5), 10, b as u64, 2, 500)
            }
            C7 => Draft::congruence(Bracelet(5), 10, 2, 2, SeriesExpr::source(LRegular(5)), 1, 500),
            C8 => Draft::congruence(LRegular(5), 2, 0, 2, eta(&[(2, 1)])?, 1, 500),
            C9 => {
                let shift = |t, e: SeriesExpr| SeriesExpr::Scale(-1, Box::new(SeriesExpr::Shift(t, Box::new(e))));
                let rhs = SeriesExpr::Product(vec![
                    eta(&[(25, 1)])?,
                    SeriesExpr::Sum(vec![
                        SeriesExpr::source(RamanujanA),
                        shift(1, SeriesExpr::One),
                        shift(2, SeriesExpr::source(RamanujanB)),
                    ]),
                ]);
                Draft {
                    lhs: Product(ProductSpec::eta_quotient(&[(1, 1)])?),
                    step: 1,
                    residue: 0,
                    ring: RingKind::Exact,
                    kind: ClaimKind::ExactIdentity { rhs },
                    n_min: 0,
                    unit_at_zero: false,
                    n_max: 1000,
                }
            }
            C10 | C12 => {
                let (p, a, i) = (params.get_u64("p")?, params.get("a")?, params.get("i")?);
                prime_at_least(p, 5)?;
                if !is_quadratic_nonresidue(-10, p)? {
                    return Err(Error::InvalidParameter(format!("(-10/{p}) must be -1")));
                }
                in_range("a", a, 1, 16)?;
                in_range("i", i, 1, p as i64 - 1)?;
                let p2a = pow(p, 2 * a)? as i128;
                let p2a1 = pow(p, 2 * a - 1)? as i128;
                let base = (24 * i as i128 + 7 * p as i128) * p2a1;
                if self == C10 {
                    let residue = exact_div(base - 1, 6)?;
                    Draft::vanishing(LRegular(5), checked_u64(4 * p2a)?, residue, 2, 3)
                } else {
                    let residue = exact_div(5 * base + 1, 3)?;
                    Draft::vanishing(Bracelet(5), checked_u64(40 * p2a)?, residue, 2, 2)
                }
            }
            C11 | C13 => {
                let (c, a) = (params.get("c")?, params.get("a")?);
                one_of("c", c, &[31, 79, 83, 107])?;
                let wide = i64::from(c == 83 || c == 107);
                if self == C11 {
                    in_range("a", a, 0, 12)?;
                    let step = 4 * pow(5, 2 * a + 1 + wide)?;
                    let residue = exact_div(c as i128 * pow(5, 2 * a + wide)? as i128 - 1, 6)?;
                    Draft::vanishing(LRegular(5), step, residue, 2, 100)
                } else {
                    in_range("a", a, 1, 12)?;
                    let step = 8 * pow(5, 2 * a + wide)?;
                    let residue = exact_div(c as i128 * pow(5, 2 * a - 1 + wide)? as i128 + 1, 3)?;
                    Draft::vanishing(Bracelet(5), step, residue, 2, 20)
                }
            }
            C14 => {
                let (p, r, a) = (params.get_u64("p")?, params.get("r")?, params.get("a")?);
                prime_at_least(p, 5)?;
                in_range("r", r, 1, 40)?;
                in_range("a", a, 1, (r + 1) / 2)?;
                let k = pow(p, r)?;
                let rhs = eta(&[(2 * p, 1), (2 * pow(p, r - 2 * a + 1)?, -1)])?;
                let sign = epsilon_power(p, a)?;
                let residue = exact_div(pow(p, 2 * a)? as i128 - 1, 12)?;
                Draft::congruence(Bracelet(k), pow(p, 2 * a - 1)?, residue, p, rhs, sign, DEFAULT_N_MAX)
            }
            C15 => {
                let (p, r, a, i) = (params.get_u64("p")?, params.get("r")?, params.get("a")?, params.get("i")?);
                prime_at_least(p, 5)?;
                in_range("r", r, 1, 40)?;
                if r < 2 {
                    return Err(Error::Vacuous(format!("C15 needs 1 <= α <= r/2; empty for r = {r}")));
                }
                in_range("a", a, 1, r / 2)?;
                in_range("i", i, 1, p as i64 - 1)?;
                let residue = exact_div((12 * i as i128 + p as i128) * pow(p, 2 * a - 1)? as i128 - 1, 12)?;
                Draft::vanishing(Bracelet(pow(p, r)?), pow(p, 2 * a)?, residue, p, 100)
            }
            C16 => {
                let (p, r, a, j) = (params.get_u64("p")?, params.get("r")?, params.get("a")?, params.get("j")?);
                prime_at_least(p, 5)?;
                in_range("r", r, 1, 40)?;
                if r < 3 {
                    return Err(Error::Vacuous(format!("C16 needs 1 <= α <= (r-1)/2; empty for r = {r}")));
                }
                in_range("a", a, 1, (r - 1) / 2)?;
                in_range("j", j, 1, p as i64 - 1)?;
                if !is_quadratic_nonresidue(12 * j + 1, p)? {
                    return Err(Error::InvalidParameter(format!("12j+1 = {} is not a nonresidue mod {p}", 12 * j + 1)));
                }
                let residue = exact_div((12 * j as i128 + 1) * pow(p, 2 * a)? as i128 - 1, 12)?;
                Draft::vanishing(Bracelet(pow(p, r)?), pow(p, 2 * a + 1)?, residue, p, 40)
            }
            C17 => {
                let (p, a, v) = (params.get_u64("p")?, params.get("a")?, params.get("v")?);
                prime_at_least(p, 5)?;
                in_range("a", a, 1, 20)?;
                one_of("v", v, &[1, 2])?;
                let k = pow(p, 2 * a - 1)?;
                let rhs = if v == 1 {
                    SeriesExpr::source(LRegular(p))
                } else {
                    SeriesExpr::Product(vec![eta(&[(p, 1)])?, SeriesExpr::source(Partition)])
                };
                let residue = exact_div(pow(p, 2 * a)? as i128 - 1, 12)?;
                Draft::congruence(Bracelet(k), 2 * k, residue, p, rhs, epsilon_power(p, a)?, DEFAULT_N_MAX)
            }
            C18 => {
                let (p, a) = (params.get("p")?, params.get("a")?);
                one_of("p", p, &[5, 7, 11])?;
                in_range("a", a, 1, 12)?;
                let c: i128 = match p {
                    5 => 101,
                    7 => 127,
                    _ => 155,
                };
                let p = p as u64;
                let k = pow(p, 2 * a - 1)?;
                let residue = exact_div(c * k as i128 - 1, 12)?;
                Draft::vanishing(Bracelet(k), 2 * pow(p, 2 * a)?, residue, p, 40)
            }
            C19 => {
                let (p, a) = (params.get_u64("p")?, params.get("a")?);
                prime_at_least(p, 5)?;
                in_range("a", a, 1, 20)?;
                let residue = exact_div(pow(p, 2 * a)? as i128 - 1, 12)?;
                Draft {
                    n_min: 1,
                    unit_at_zero: true,
                    ..Draft::vanishing(Bracelet(pow(p, 2 * a)?), pow(p, 2 * a - 1)?, residue, p, 300)
                }
            }
            C20 => {
                let p = params.get("p")?;
                one_of("p", p, &[5, 7, 11])?;
                let residue = match p {
                    5 => 4,
                    7 => 5,
                    _ => 6,
                };
                Draft::vanishing(Partition, p as u64, residue, p as u64, 150)
            }
        })
    }
}

fn checked_u64(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::InvalidParameter(format!("{v} overflows")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claim(text: &str) -> Result<CongruenceClaim> {
        match parse_claim_selector(text)?.pop().unwrap() {
            Selected::Claim(c) => Ok(*c),
            Selected::Rejected { error, .. } => Err(error),
        }
    }

    fn shape(c: &CongruenceClaim) -> (u64, u64, Option<u64>) {
        (c.progression.step(), c.progression.residue() + c.progression.step() * c.index_offset, c.modulus())
    }

    #[test]
    fn worked_instances() {
        let c = claim("C15[p=5,r=2,a=1,i=1]").unwrap();
        assert_eq!(c.lhs, SeriesExpr::source(SeriesSource::Bracelet(25)));
        assert_eq!(shape(&c), (25, 7, Some(5)));
        let c = claim("C16[p=5,r=3,a=1,j=1]").unwrap();
        assert_eq!(c.lhs, SeriesExpr::source(SeriesSource::Bracelet(125)));
        assert_eq!(shape(&c), (125, 27, Some(5)));
        let c = claim("C12[p=17,a=1,i=6]").unwrap();
        assert_eq!(shape(&c), (11560, 7452, Some(2)));
        assert_eq!(c.required_truncation(2), 30572);
        let c = claim("C18[p=7,a=1]").unwrap();
        assert_eq!(c.lhs, SeriesExpr::source(SeriesSource::Bracelet(7)));
        assert_eq!(shape(&c), (98, 74, Some(7)));
        assert_eq!(shape(&claim("C18[p=5,a=1]").unwrap()), (50, 42, Some(5)));
        assert_eq!(shape(&claim("C18[p=11,a=1]").unwrap()), (242, 142, Some(11)));
    }

    #[test]
    fn c14_instance_has_expected_sign_and_rhs() {
        let c = claim("C14[p=5,r=1,a=1]").unwrap();
        assert_eq!(shape(&c), (5, 2, Some(5)));
        match &c.kind {
            ClaimKind::SeriesCongruence { rhs, sign, .. } => {
                assert_eq!(*sign, -1);
                assert_eq!(*rhs, eta(&[(10, 1), (2, -1)]).unwrap());
            }
            other => panic!("unexpected kind {other:?}"),
        }
    }

    #[test]
    fn families_at_powers_of_five() {
        let shapes: Vec<_> =
            [31, 79, 83, 107].iter().map(|c| shape(&claim(&format!("C13[c={c},a=1]")).unwrap())).collect();
        assert_eq!(shapes, vec![(200, 52, Some(2)), (200, 132, Some(2)), (1000, 692, Some(2)), (1000, 892, Some(2))]);
        let shapes: Vec<_> =
            [31, 79, 83, 107].iter().map(|c| shape(&claim(&format!("C11[c={c},a=0]")).unwrap())).collect();
        assert_eq!(shapes, vec![(20, 5, Some(2)), (20, 13, Some(2)), (100, 69, Some(2)), (100, 89, Some(2))]);
        let c = claim("C10[p=17,a=1,i=1]").unwrap();
        assert_eq!(shape(&c), (1156, 405, Some(2)));
    }

    #[test]
    fn range_violations() {
        assert!(matches!(claim("C16[p=5,r=1,a=1,j=1]"), Err(Error::Vacuous(_))));
        assert!(matches!(claim("C16[p=5,r=2,a=1,j=1]"), Err(Error::Vacuous(_))));
        assert!(matches!(claim("C15[p=5,r=1,a=1,i=1]"), Err(Error::Vacuous(_))));
        assert!(matches!(claim("C15[p=5,r=4,a=3,i=1]"), Err(Error::InvalidParameter(_))));
        // 12·2 + 1 = 25 ≡ 0 and 12·4 + 1 = 49 ≡ 4 (a square) mod 5
        assert!(claim("C16[p=5,r=3,a=1,j=2]").is_err());
        assert!(claim("C16[p=5,r=3,a=1,j=4]").is_err());
        assert!(claim("C3[p=5,m=2,s=4]").is_err());
        // (-10/7) = (4/7) = +1
        assert!(claim("C12[p=7,a=1,i=1]").is_err());
        assert!(claim("C14[p=5,r=3,a=3]").is_err());
        assert!(claim("C19[p=4,a=1]").is_err());
        assert!(claim("C4[m=2,l=2]").is_err());
        assert!(claim("C6[b=7]").is_err());
        assert!(claim("C6[b=6,x=1]").is_err());
        assert!(matches!(parse_claim_selector("C21"), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn large_residues_fold_into_the_step() {
        // ((12·12 + 13)·13 - 1)/12 = 170 >= 169
        let c = claim("C15[p=13,r=2,a=1,i=12]").unwrap();
        assert_eq!((c.progression.step(), c.progression.residue(), c.index_offset), (169, 1, 1));
        assert_eq!(c.required_truncation(0), 170);
    }

    #[test]
    fn every_default_claim_is_well_formed() {
        let all = default_claims();
        assert!(all.len() > 40);
        for s in &all {
            let Selected::Claim(c) = s else { panic!("default grid rejected: {s:?}") };
            assert!(c.progression.residue() < c.progression.step());
            if let Some(m) = c.modulus() {
                assert!(m >= 2);
            }
            assert!(c.required_truncation(c.default_n_max) <= DEFAULT_MOD_ORDER_CAP, "{}", c.id);
        }
    }

    #[test]
    fn instantiation_is_deterministic() {
        let a = claim("C17[p=5,a=1,v=2]").unwrap();
        let b = claim("C17[p=5,a=1,v=2]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.id, "C17[p=5,a=1,v=2]");
    }

    #[test]
    fn c14_rhs_exponent_stays_nonnegative() {
        for r in 1..=6i64 {
            for a in 1..=(r + 1) / 2 {
                let c = Family::C14.instantiate(&Params::new().with("p", 5).with("r", r).with("a", a)).unwrap();
                if 2 * a == r + 1 {
                    let ClaimKind::SeriesCongruence { rhs, .. } = &c.kind else { unreachable!() };
                    assert_eq!(*rhs, eta(&[(10, 1), (2, -1)]).unwrap());
                }
            }
        }
    }

    #[test]
    fn notation() {
        assert_eq!(claim("C6[b=6]").unwrap().notation(), "B_5(10n+6) ≡ 0 (mod 2)");
        assert_eq!(claim("C20[p=5]").unwrap().notation(), "p(5n+4) ≡ 0 (mod 5)");
        assert_eq!(claim("C7").unwrap().notation(), "Σ B_5(10n+2) q^n ≡ Σ b_5(n) q^n (mod 2)");
    }

    #[test]
    fn catalog_lists_every_family() {
        let cat = builtin_claims();
        assert_eq!(cat.len(), 20);
        assert_eq!(cat[14].family, Family::C15);
        assert_eq!(cat[14].params, &["p", "r", "a", "i"]);
        assert_eq!(cat[0].origin, Origin::Imported);
        assert_eq!(cat[5].origin, Origin::Original);
    }
}
