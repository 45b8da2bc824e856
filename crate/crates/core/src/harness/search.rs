use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::SeriesSource;
use crate::error::{Error, Result};
use crate::ring::{CoefficientRing, ModRing, RingKind};

use super::{OutputFormat, RunConfig};

pub const CANDIDATE_NOTE: &str = "candidate (bounded evidence only)";

/// A progression on which every checked coefficient vanished.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub source: String,
    pub step: u64,
    pub residue: u64,
    pub modulus: u64,
    pub n_max: u64,
    pub note: &'static str,
}

impl Candidate {
    pub fn text_line(&self) -> String {
        let arg =
            if self.residue == 0 { format!("{}n", self.step) } else { format!("{}n+{}", self.step, self.residue) };
        let label = self.source.parse::<SeriesSource>().map(|s| s.label()).unwrap_or_else(|_| self.source.clone());
        format!("{label}({arg}) ≡ 0 (mod {}) for n≤{}: {}", self.modulus, self.n_max, self.note)
    }
}

/// All `(A, B, M)` with `A <= a_max`, `B < A`, `M` in `moduli` such that the
/// coefficients of `source` at `A·n + B` vanish mod `M` for every `n <= n_max`.
///
/// Sorted by modulus, then step, then residue.
pub fn search(
    source: &SeriesSource,
    a_max: u64,
    moduli: &[u64],
    n_max: u64,
    config: &RunConfig,
) -> Result<Vec<Candidate>> {
    if a_max == 0 {
        return Err(Error::InvalidParameter("a_max must be at least 1".into()));
    }
    if moduli.is_empty() {
        return Err(Error::InvalidParameter("at least one modulus is required".into()));
    }
    let order = a_max
        .checked_mul(n_max)
        .and_then(|x| x.checked_add(a_max - 1))
        .ok_or_else(|| Error::InvalidParameter("search range overflows".into()))?;
    for &m in moduli {
        config.check_cap(RingKind::Mod(m), order)?;
    }
    let mut moduli = moduli.to_vec();
    moduli.sort_unstable();
    moduli.dedup();
    let per_modulus: Vec<Result<Vec<Candidate>>> = config.install(|| {
        moduli
            .par_iter()
            .map(|&m| {
                let ring = ModRing::new(m)?;
                let series = source.expand(&ring, order as usize)?;
                let c = series.coeffs();
                let mut out = Vec::new();
                for step in 1..=a_max {
                    for residue in 0..step {
                        let vanishes = (0..=n_max).all(|n| ring.is_zero(&c[(step * n + residue) as usize]));
                        if vanishes {
                            out.push(Candidate {
                                source: source.to_string(),
                                step,
                                residue,
                                modulus: m,
                                n_max,
                                note: CANDIDATE_NOTE,
                            });
                        }
                    }
                }
                Ok(out)
            })
            .collect()
    });
    let mut all = Vec::new();
    for r in per_modulus {
        all.extend(r?);
    }
    Ok(all)
}

/// Renders candidates as text lines, a JSON array, or CSV.
pub fn render_candidates(found: &[Candidate], format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Text => found.iter().map(|c| c.text_line() + "\n").collect(),
        OutputFormat::Json => {
            serde_json::to_string_pretty(found)
                .map_err(|e| Error::InvalidParameter(format!("json encoding failed: {e}")))?
                + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("source,step,residue,modulus,n_max,note\n");
            for c in found {
                out.push_str(&format!(
                    "\"{}\",{},{},{},{},{}\n",
                    c.source, c.step, c.residue, c.modulus, c.n_max, c.note
                ));
            }
            out
        }
    })
}
