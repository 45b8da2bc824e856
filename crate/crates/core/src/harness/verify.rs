use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::catalog::families::Selected;
use crate::catalog::{ClaimKind, CongruenceClaim, Family, Progression, SeriesSource};
use crate::error::Result;
use crate::ring::{CoefficientRing, ModRing, RingKind};
use crate::series::TruncatedSeries;
use crate::Exact;

use super::cache::SeriesCache;
use super::report::{Counterexample, Status, VerificationReport};
use super::RunConfig;

/// Both sides of a claim, expanded far enough for terms `n <= n_max`.
struct Sides<'a, R: CoefficientRing> {
    claim: &'a CongruenceClaim,
    ring: R,
    lhs: TruncatedSeries<R>,
    rhs: Option<(TruncatedSeries<R>, Progression, R::Elem)>,
}

impl<'a, R: CoefficientRing> Sides<'a, R> {
    fn build<F>(claim: &'a CongruenceClaim, ring: &R, n_max: u64, fetch: &F) -> Result<Self>
    where
        F: Fn(&SeriesSource, usize) -> Result<TruncatedSeries<R>>,
    {
        let lhs = claim.lhs.evaluate(ring, claim.required_truncation(n_max) as usize, fetch)?;
        let rhs = match &claim.kind {
            ClaimKind::Vanishing => None,
            ClaimKind::SeriesCongruence { rhs, rhs_progression, sign } => {
                let order = rhs_progression.index(n_max) as usize;
                Some((rhs.evaluate(ring, order, fetch)?, *rhs_progression, ring.from_i64(*sign)))
            }
            ClaimKind::ExactIdentity { rhs } => {
                Some((rhs.evaluate(ring, n_max as usize, fetch)?, Progression::identity(), ring.one()))
            }
        };
        Ok(Sides { claim, ring: ring.clone(), lhs, rhs })
    }

    fn lhs_term(&self, n: u64) -> R::Elem {
        let idx = self.claim.progression.index(n + self.claim.index_offset) as usize;
        self.lhs.coeffs()[idx].clone()
    }

    /// `lhs(n) - sign·rhs(n)`.
    fn discrepancy(&self, n: u64) -> R::Elem {
        let l = self.lhs_term(n);
        match &self.rhs {
            None => l,
            Some((r, prog, sign)) => {
                let r = &r.coeffs()[prog.index(n) as usize];
                self.ring.sub(&l, &self.ring.mul(sign, r))
            }
        }
    }
}

struct Outcome {
    n_checked: u64,
    counterexample: Option<Counterexample>,
    message: Option<String>,
}

fn check<R, F>(claim: &CongruenceClaim, ring: &R, n_max: u64, fetch: &F) -> Result<Outcome>
where
    R: CoefficientRing,
    F: Fn(&SeriesSource, usize) -> Result<TruncatedSeries<R>>,
{
    let sides = Sides::build(claim, ring, n_max, fetch)?;
    if claim.unit_at_zero {
        let v = sides.lhs_term(0);
        if ring.unit_inverse(&v).is_none() {
            return Ok(Outcome {
                n_checked: 0,
                counterexample: Some(Counterexample { n: 0, value: ring.to_bigint(&v) }),
                message: Some("term n=0 is not a unit".into()),
            });
        }
    }
    let mut n_checked = 0;
    for n in claim.n_min..=n_max {
        n_checked += 1;
        let d = sides.discrepancy(n);
        if !ring.is_zero(&d) {
            return Ok(Outcome {
                n_checked,
                counterexample: Some(Counterexample { n, value: ring.to_bigint(&d) }),
                message: None,
            });
        }
    }
    Ok(Outcome { n_checked, counterexample: None, message: None })
}

fn check_with_cache(claim: &CongruenceClaim, n_max: u64, cache: &SeriesCache) -> Result<Outcome> {
    match claim.ring {
        RingKind::Exact => check(claim, &Exact::new(), n_max, &|s, n| cache.exact(s, n)),
        RingKind::Mod(m) => check(claim, &ModRing::new(m)?, n_max, &|s, n| cache.modular(s, m, n)),
    }
}

/// Recomputes term `n` of a claim from scratch: `lhs(n) - sign·rhs(n)`
/// reduced in the claim's ring. Zero means the term satisfies the claim.
pub fn recheck(claim: &CongruenceClaim, n: u64) -> Result<BigInt> {
    fn one<R: CoefficientRing>(claim: &CongruenceClaim, ring: &R, n: u64) -> Result<BigInt> {
        let sides = Sides::build(claim, ring, n, &|s: &SeriesSource, order| s.expand(ring, order))?;
        Ok(ring.to_bigint(&sides.discrepancy(n)))
    }
    match claim.ring {
        RingKind::Exact => one(claim, &Exact::new(), n),
        RingKind::Mod(m) => one(claim, &ModRing::new(m)?, n),
    }
}

/// Orders needed by one claim, after the cap check.
fn plan(claim: &CongruenceClaim, n_max: u64, config: &RunConfig) -> Result<Vec<(SeriesSource, usize)>> {
    let lhs_order = claim.required_truncation(n_max);
    config.check_cap(claim.ring, lhs_order)?;
    let mut out: Vec<_> = claim.lhs.sources().into_iter().map(|s| (s.clone(), lhs_order as usize)).collect();
    let rhs = match &claim.kind {
        ClaimKind::Vanishing => None,
        ClaimKind::SeriesCongruence { rhs, .. } | ClaimKind::ExactIdentity { rhs } => Some(rhs),
    };
    if let (Some(rhs), Some(order)) = (rhs, claim.rhs_truncation(n_max)) {
        config.check_cap(claim.ring, order)?;
        out.extend(rhs.sources().into_iter().map(|s| (s.clone(), order as usize)));
    }
    Ok(out)
}

fn sort_key(r: &VerificationReport) -> (bool, Option<Family>, Vec<i64>, String) {
    let names = r.family.map(|f| f.param_names()).unwrap_or_default();
    let values = names.iter().map(|n| r.params.get(n).unwrap_or(i64::MIN)).collect();
    // ad-hoc claims sort last
    (r.family.is_none(), r.family, values, r.claim_id.clone())
}

/// Checks every selected claim.
///
/// Series are expanded once per `(source, ring)` at the largest order any
/// claim needs, then claims run in parallel. Per-claim problems (range
/// violations, cap overruns, expansion errors) become error reports. Output
/// is ordered by family and then numerically by parameters.
pub fn verify(selection: &[Selected], config: &RunConfig) -> Vec<VerificationReport> {
    config.install(|| {
        let mut cache = SeriesCache::new();
        let mut jobs = Vec::new();
        let mut reports = Vec::new();
        for s in selection {
            match s {
                Selected::Claim(claim) => {
                    let n_max = config.n_max.unwrap_or(claim.default_n_max);
                    match plan(claim, n_max, config) {
                        Ok(needs) => {
                            for (src, order) in &needs {
                                cache.request(src, claim.ring, *order);
                            }
                            jobs.push((claim.as_ref(), n_max));
                        }
                        Err(e) => {
                            let mut r =
                                VerificationReport::rejected(claim.family, claim.id.clone(), claim.params.clone(), &e);
                            r.notation = claim.notation();
                            r.truncation = claim.required_truncation(n_max);
                            reports.push(r);
                        }
                    }
                }
                Selected::Rejected { id, family, params, error } => {
                    reports.push(VerificationReport::rejected(Some(*family), id.clone(), params.clone(), error));
                }
            }
        }
        cache.populate();
        let cache = &cache;
        reports.par_extend(jobs.par_iter().map(|&(claim, n_max)| {
            let start = Instant::now();
            let outcome = check_with_cache(claim, n_max, cache);
            let elapsed_ms = start.elapsed().as_millis() as u64;
            let mut r = VerificationReport {
                claim_id: claim.id.clone(),
                params: claim.params.clone(),
                status: Status::Pass,
                n_checked: 0,
                truncation: claim.required_truncation(n_max),
                counterexample: None,
                elapsed_ms,
                message: None,
                family: claim.family,
                notation: claim.notation(),
                range: Some((claim.n_min, n_max)),
            };
            match outcome {
                Ok(o) => {
                    r.n_checked = o.n_checked;
                    r.status = if o.counterexample.is_some() { Status::Fail } else { Status::Pass };
                    r.counterexample = o.counterexample;
                    r.message = o.message;
                }
                Err(e) => {
                    r.status = Status::Error;
                    r.message = Some(e.to_string());
                }
            }
            r
        }));
        reports.sort_by_key(sort_key);
        reports
    })
}

/// [`verify`] for already-built claims.
pub fn verify_claims(claims: &[CongruenceClaim], config: &RunConfig) -> Vec<VerificationReport> {
    let selection: Vec<Selected> = claims.iter().cloned().map(|c| Selected::Claim(Box::new(c))).collect();
    verify(&selection, config)
}
