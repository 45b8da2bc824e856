//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Congruence checks are exact; the only tolerances are the
//! wall-time limits below, measured on a single worker thread.

use std::time::{Duration, Instant};

use bracelet_core::catalog::{parse_claim_selector, CongruenceClaim, Selected, SeriesSource};
use bracelet_core::harness::{recheck, verify, verify_claims, RunConfig, Status, VerificationReport};
use bracelet_core::oracles::{count_l_regular_bruteforce, count_partitions_bruteforce, partition_euler_recurrence};
use bracelet_core::qseries::product::{pochhammer_series, PochhammerFactor, Sign};
use bracelet_core::qseries::{
    five_dissection_rhs, gen_bracelet, gen_l_regular, gen_partition, jacobi_triple_check, p_dissection_f, ramanujan_a,
    ramanujan_b, theta_f, PrimeContext,
};
use bracelet_core::{CoefficientRing, Exact, ExactSeries, ModRing, TruncatedSeries};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

const IDENTITY_LIMIT: Duration = Duration::from_secs(10);
const DISSECTION_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_LIMIT: Duration = Duration::from_secs(5);
const MOD2_LIMIT: Duration = Duration::from_secs(30);
const PROPERTY_LIMIT: Duration = Duration::from_secs(10);
/// Cap for the α = 1 b_5 families at powers of 5, whose widest progression
/// needs order 2500·100 + 2229.
const WIDE_ORDER_CAP: u64 = 300_000;
const PROPERTY_INSTANCES: usize = 1000;
const SEED: u64 = 0x5eed_b520;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn single_thread() -> RunConfig {
    RunConfig { jobs: 1, ..RunConfig::default() }
}

fn select(ids: &[&str]) -> Vec<Selected> {
    ids.iter().flat_map(|id| parse_claim_selector(id).expect("known claim")).collect()
}

/// Runs claims at `n_max` and requires every one to pass.
fn all_pass(ids: &[&str], n_max: u64, config: RunConfig) -> Check {
    let reports = verify(&select(ids), &RunConfig { n_max: Some(n_max), ..config });
    summarize(&reports)
}

fn summarize(reports: &[VerificationReport]) -> Check {
    let bad: Vec<String> = reports.iter().filter(|r| r.status != Status::Pass).map(|r| r.text_line()).collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let checked: u64 = reports.iter().map(|r| r.n_checked).sum();
    let deepest = reports.iter().map(|r| r.truncation).max().unwrap_or(0);
    Ok(format!("{} claims, {checked} terms, max order {deepest}", reports.len()))
}

fn exact(order: usize, f: impl Fn(&Exact, usize) -> bracelet_core::Result<ExactSeries>) -> ExactSeries {
    f(&Exact::new(), order).expect("expansion")
}

fn criterion_1() -> Check {
    let n = 1000;
    let euler = exact(n, |z, n| pochhammer_series(z, &PochhammerFactor::euler(1, 1)?, n));
    let pentagonal = exact(n, |z, n| theta_f(z, 1, 2, Sign::Minus, Sign::Minus, n));
    ensure(euler == pentagonal, || "pentagonal sum differs from (q;q)".into())?;
    let five = exact(n, five_dissection_rhs);
    ensure(five == euler, || "(q^25;q^25)(a - q - q^2 b) differs from (q;q)".into())?;
    let ab = exact(n, ramanujan_a).checked_mul(&exact(n, ramanujan_b)).map_err(|e| e.to_string())?;
    ensure(ab == ExactSeries::one(Exact::new(), n), || "a(q)b(q) != 1".into())?;
    for (t, s) in [(0, Sign::Plus), (0, Sign::Minus), (1, Sign::Minus)] {
        ensure(jacobi_triple_check(t, s, 200).map_err(|e| e.to_string())?, || format!("triple product at t={t}"))?;
    }
    for k in [3u64, 5, 7] {
        let def = exact(300, |z, n| gen_bracelet(z, k, n));
        let eta = exact(300, |z, n| SeriesSource::Bracelet(k).expand(z, n));
        ensure(def == eta, || format!("bracelet k={k}: definition and eta form differ"))?;
    }
    Ok("pentagonal, 5-dissection, a·b=1 to order 1000; triple product to 200; B_3,B_5,B_7 to 300".into())
}

fn criterion_2() -> Check {
    let n = 500;
    let euler = exact(n, |z, n| pochhammer_series(z, &PochhammerFactor::euler(1, 1)?, n));
    for p in [5u64, 7, 11, 13] {
        let ctx = PrimeContext::new(p).map_err(|e| e.to_string())?;
        let parts = p_dissection_f(&Exact::new(), &ctx, n).map_err(|e| e.to_string())?;
        let mut sum = ExactSeries::zero(Exact::new(), n);
        for (class, part) in &parts {
            let support_ok =
                part.coeffs().iter().enumerate().all(|(i, c)| *c == BigInt::from(0) || i as u64 % p == *class);
            ensure(support_ok, || format!("p={p}: component {class} leaks outside its class"))?;
            sum = sum.checked_add(part).map_err(|e| e.to_string())?;
        }
        ensure(sum == euler, || format!("p={p}: components do not sum to (q;q)"))?;
    }
    for p in [5u64, 7, 11, 13, 17, 19, 23] {
        let ctx = PrimeContext::new(p).map_err(|e| e.to_string())?;
        ensure(ctx.delta_class_is_distinct(), || format!("δ class meets a pentagonal class for p={p}"))?;
    }
    Ok("reconstruction for p=5,7,11,13 to order 500; δ_p distinct for p=5..23".into())
}

fn criterion_3() -> Check {
    let z = Exact::new();
    let p = gen_partition(&z, 1000).map_err(|e| e.to_string())?;
    let b5 = gen_l_regular(&z, 5, 40).map_err(|e| e.to_string())?;
    for n in 0..=40u64 {
        let brute = count_partitions_bruteforce(n).map_err(|e| e.to_string())?;
        ensure(p.coeffs()[n as usize] == BigInt::from(brute), || format!("p({n}) vs enumeration"))?;
        let brute = count_l_regular_bruteforce(5, n).map_err(|e| e.to_string())?;
        ensure(b5.coeffs()[n as usize] == BigInt::from(brute), || format!("b_5({n}) vs enumeration"))?;
    }
    let rec = partition_euler_recurrence(1000);
    ensure(p.coeffs() == rec.as_slice(), || "p(n) vs recurrence up to 1000".into())?;
    Ok("enumeration n≤40 (p, b_5); recurrence n≤1000".into())
}

fn criterion_4() -> Check {
    all_pass(&["C20", "C1"], 150, RunConfig::default())
}

fn criterion_5() -> Check {
    let reports = verify(&select(&["C6", "C7", "C8"]), &RunConfig { n_max: Some(500), ..single_thread() });
    let c6 = reports.iter().filter(|r| r.claim_id.starts_with("C6")).map(|r| r.truncation).max();
    ensure(c6 == Some(5008), || format!("C6 order {c6:?}, expected 5008"))?;
    summarize(&reports)
}

fn criterion_6() -> Check {
    let wide = RunConfig { mod_order_cap: WIDE_ORDER_CAP, ..RunConfig::default() };
    let parts = [
        all_pass(&["C11[c=31,a=0]", "C11[c=79,a=0]", "C11[c=83,a=0]", "C11[c=107,a=0]"], 100, RunConfig::default())?,
        all_pass(&["C11[c=31,a=1]", "C11[c=79,a=1]", "C11[c=83,a=1]", "C11[c=107,a=1]"], 100, wide)?,
        all_pass(&["C13[c=31,a=1]", "C13[c=79,a=1]", "C13[c=83,a=1]", "C13[c=107,a=1]"], 20, RunConfig::default())?,
        all_pass(&["C12[p=17,a=1,i=6]"], 2, RunConfig::default())?,
        all_pass(&["C10[p=17,a=1,i=1]", "C10[p=17,a=1,i=6]"], 3, RunConfig::default())?,
    ];
    Ok(parts.join(" | "))
}

fn criterion_7() -> Check {
    let reports = verify(&select(&["C19[p=5,a=1]"]), &RunConfig { n_max: Some(300), ..RunConfig::default() });
    let c19 = &reports[0];
    ensure(c19.status == Status::Pass && c19.n_checked == 300, || c19.text_line())?;
    let claim = match &select(&["C19[p=5,a=1]"])[0] {
        Selected::Claim(c) => c.clone(),
        other => return Err(format!("{other:?}")),
    };
    let lead = recheck(&claim, 0).map_err(|e| e.to_string())?;
    ensure(lead == BigInt::from(1) || lead == BigInt::from(4), || format!("B_25(2) ≡ {lead} (mod 5), expected ±1"))?;
    let parts = [
        all_pass(&["C14[p=5,r=1,a=1]", "C14[p=5,r=3,a=1]", "C14[p=5,r=3,a=2]"], 200, RunConfig::default())?,
        all_pass(
            &["C15[p=5,r=2,a=1,i=1]", "C15[p=5,r=2,a=1,i=2]", "C15[p=5,r=2,a=1,i=3]", "C15[p=5,r=2,a=1,i=4]"],
            100,
            RunConfig::default(),
        )?,
        all_pass(&["C16[p=5,r=3,a=1,j=1]", "C16[p=5,r=3,a=1,j=3]"], 40, RunConfig::default())?,
        all_pass(&["C17[p=5,a=1,v=1]", "C17[p=5,a=1,v=2]"], 200, RunConfig::default())?,
    ];
    Ok(format!("{} | C19 1≤n≤300, n=0 term ≡ {lead}", parts.join(" | ")))
}

fn criterion_8() -> Check {
    all_pass(&["C18[p=5,a=1]", "C18[p=7,a=1]", "C18[p=11,a=1]"], 40, RunConfig::default())
}

fn criterion_9() -> Check {
    let parts = [
        all_pass(&["C2[p=5,r=1]", "C2[p=7,r=1]", "C2[p=3,r=2]"], 200, RunConfig::default())?,
        all_pass(&["C3[p=5,m=2,s=1]", "C3[p=5,m=2,s=3]"], 100, RunConfig::default())?,
        all_pass(&["C4[m=2,l=3]"], 200, RunConfig::default())?,
        all_pass(&["C5"], 100, RunConfig::default())?,
    ];
    Ok(parts.join(" | "))
}

fn criterion_10() -> Check {
    let claim =
        CongruenceClaim::vanishing("planted", SeriesSource::Bracelet(5), 10, 1, 2, 200).map_err(|e| e.to_string())?;
    let r = verify_claims(std::slice::from_ref(&claim), &RunConfig::default()).remove(0);
    ensure(r.status == Status::Fail, || format!("planted claim not rejected: {}", r.text_line()))?;
    let c = r.counterexample.clone().ok_or("fail without counterexample")?;
    ensure(c.n <= 5, || format!("first failure at n={} > 5", c.n))?;
    ensure(recheck(&claim, c.n).map_err(|e| e.to_string())? == c.value, || "recheck disagrees".into())?;
    Ok(format!("B_5(10n+1) ≡ 0 (mod 2) fails at n={} with residue {}", c.n, c.value))
}

fn random_series<R: CoefficientRing>(ring: &R, rng: &mut ChaCha8Rng, len: usize) -> TruncatedSeries<R> {
    let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-50..=50)).collect();
    TruncatedSeries::from_i64s(ring.clone(), &v).expect("canonical")
}

fn properties<R: CoefficientRing>(ring: &R, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let e = |err: bracelet_core::Error| err.to_string();
    let len = rng.gen_range(1..=64);
    let (x, y, z) = (random_series(ring, rng, len), random_series(ring, rng, len), random_series(ring, rng, len));
    let n = len - 1;
    ensure(&(&x + &y) + &z == &x + &(&y + &z), || "addition not associative".into())?;
    ensure(&x * &y == &y * &x, || "multiplication not commutative".into())?;
    ensure(&(&x * &y) * &z == &x * &(&y * &z), || "multiplication not associative".into())?;
    ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), || "not distributive".into())?;
    let x2 = x.clone();
    ensure((&x - &x2).is_zero(), || "x - x != 0".into())?;
    if ring.unit_inverse(&x.coeffs()[0]).is_some() {
        let inv = x.invert().map_err(e)?;
        let one = TruncatedSeries::one(ring.clone(), n);
        ensure(&x * &inv == one && &inv * &x == one, || "inverse not two-sided".into())?;
        let k = rng.gen_range(1..=4i64);
        ensure(x.pow(-k).map_err(e)? == inv.pow(k).map_err(e)?, || "x^-k != (x^-1)^k".into())?;
        ensure(y.mul_pow(&x, -k).map_err(e)? == &y * &inv.pow(k).map_err(e)?, || "mul_pow mismatch".into())?;
    }
    let step = rng.gen_range(1..=9u64);
    let mut sum = TruncatedSeries::zero(ring.clone(), step as usize * len - 1);
    for b in 0..step.min(len as u64) {
        let part = x.dissect(step, b).map_err(e)?.inflate(step).map_err(e)?.shift(b as usize);
        sum = sum.checked_add(&part).map_err(e)?;
    }
    // classes with B > order leave the reconstruction one period short
    let bound = sum.order().min(n);
    ensure(bound + step as usize > n, || format!("reconstruction too short: {bound} of {n}"))?;
    ensure(x.equal_upto(&sum, bound).map_err(e)?, || format!("dissect/inflate reconstruction failed, step {step}"))?;
    let (s, t) = (rng.gen_range(1..=4u64), rng.gen_range(1..=4u64));
    let composed = x.inflate(s).map_err(e)?.inflate(t).map_err(e)?;
    let direct = x.inflate(s * t).map_err(e)?;
    ensure(composed.truncate(direct.order()) == direct, || "inflate does not compose".into())?;
    Ok(())
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let moduli = [2u64, 3, 4, 5, 7, 25, 49, 121, 65_537, (1 << 32) - 5];
    for i in 0..PROPERTY_INSTANCES {
        if i % 3 == 0 {
            let z = Exact::new();
            properties(&z, &mut rng).map_err(|m| format!("instance {i} (Z): {m}"))?;
            let m = moduli[rng.gen_range(0..moduli.len())];
            let len = rng.gen_range(1..=40);
            let (x, y) = (random_series(&z, &mut rng, len), random_series(&z, &mut rng, len));
            let lhs = (&x * &y).reduce_mod(m).map_err(|e| e.to_string())?;
            let rhs = &x.reduce_mod(m).map_err(|e| e.to_string())? * &y.reduce_mod(m).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("instance {i}: reduction mod {m} is not a homomorphism"))?;
        } else {
            let m = moduli[rng.gen_range(0..moduli.len())];
            let ring = ModRing::new(m).map_err(|e| e.to_string())?;
            properties(&ring, &mut rng).map_err(|msg| format!("instance {i} (Z/{m}Z): {msg}"))?;
        }
    }
    Ok(format!("{PROPERTY_INSTANCES} instances, seed {SEED:#x}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("identity suite", Some(IDENTITY_LIMIT), criterion_1),
        ("p-dissection suite", Some(DISSECTION_LIMIT), criterion_2),
        ("oracle concordance", Some(ORACLE_LIMIT), criterion_3),
        ("classical congruences", None, criterion_4),
        ("mod 2 congruences for B_5", Some(MOD2_LIMIT), criterion_5),
        ("mod 2 families", None, criterion_6),
        ("mod p families for B_{p^r}", None, criterion_7),
        ("corollaries", None, criterion_8),
        ("imported regressions", None, criterion_9),
        ("negative control", None, criterion_10),
        ("property suite", Some(PROPERTY_LIMIT), criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let limit = limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}{limit}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}{limit}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
