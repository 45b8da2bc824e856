use num_bigint::BigInt;

use crate::catalog::SeriesSource;
use crate::error::{Error, Result};
use crate::ring::{ModRing, RingKind};
use crate::Exact;

use super::{OutputFormat, RunConfig};

fn ring_kind(modulus: Option<u64>) -> RingKind {
    modulus.map_or(RingKind::Exact, RingKind::Mod)
}

/// Coefficients `0..=n` of `source`, reduced mod `modulus` when given.
pub fn coefficients(source: &SeriesSource, n: u64, modulus: Option<u64>, config: &RunConfig) -> Result<Vec<BigInt>> {
    config.check_cap(ring_kind(modulus), n)?;
    Ok(match modulus {
        None => source.expand(&Exact::new(), n as usize)?.to_bigints(),
        Some(m) => source.expand(&ModRing::new(m)?, n as usize)?.to_bigints(),
    })
}

/// Coefficients `0..=n` of `Σ c(A·j + B) q^j`.
pub fn dissected_coefficients(
    source: &SeriesSource,
    step: u64,
    residue: u64,
    n: u64,
    modulus: Option<u64>,
    config: &RunConfig,
) -> Result<Vec<BigInt>> {
    if step == 0 || residue >= step {
        return Err(Error::InvalidProgression { step, residue });
    }
    let order = step
        .checked_mul(n)
        .and_then(|x| x.checked_add(residue))
        .ok_or_else(|| Error::InvalidParameter("dissection range overflows".into()))?;
    config.check_cap(ring_kind(modulus), order)?;
    let order = order as usize;
    Ok(match modulus {
        None => source.expand(&Exact::new(), order)?.dissect(step, residue)?.truncate(n as usize).to_bigints(),
        Some(m) => source.expand(&ModRing::new(m)?, order)?.dissect(step, residue)?.truncate(n as usize).to_bigints(),
    })
}

/// Space-separated values for text, `n,coefficient` rows for CSV, an array
/// for JSON.
pub fn render_coefficients(values: &[BigInt], format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Text => {
            let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            parts.join(" ") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{i},{v}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            format!("[{}]\n", parts.join(","))
        }
    })
}
