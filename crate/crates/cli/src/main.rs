use std::io::Write;
use std::process::ExitCode;

use bracelet_core::catalog::{builtin_claims, default_claims, parse_claim_selector, Selected, SeriesSource};
use bracelet_core::harness::{
    coefficients, dissected_coefficients, render_candidates, render_coefficients, render_reports, search, verify,
    OutputFormat, RunConfig, EXACT_ORDER_CAP_ENV, ORDER_CAP_ENV,
};
use bracelet_core::{Error, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bracelet", version, about = "Expand partition generating functions and check congruences on them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Largest series order in modular rings
    #[arg(long, env = ORDER_CAP_ENV)]
    order_cap: Option<u64>,
    /// Largest series order over the integers
    #[arg(long, env = EXACT_ORDER_CAP_ENV)]
    exact_order_cap: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print coefficients 0..=N of a series
    Coeffs {
        /// partition, euler[:s], lregular:L, diamond:K, bracelet:K,
        /// ramanujan-a, ramanujan-b or product:SPEC
        source: String,
        n: Option<u64>,
        #[arg(short = 'N', long = "order")]
        order: Option<u64>,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, default_value = "text")]
        format: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Print coefficients 0..=N of Σ c(A·n + B) q^n
    Dissect {
        source: String,
        step: u64,
        residue: u64,
        #[arg(short = 'N', long = "order", default_value_t = 20)]
        order: u64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, default_value = "text")]
        format: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check catalog claims; exits nonzero if any claim fails or errors
    Verify {
        /// Claim ids or family names, e.g. C6 or C15[p=5,r=2,a=1,i=1]
        #[arg(long, num_args = 1..)]
        claims: Vec<String>,
        /// Every family over its default grid (the default without --claims)
        #[arg(long, conflicts_with = "claims")]
        all: bool,
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long, default_value = "text")]
        format: String,
        /// Worker threads, 0 for automatic
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// List progressions A·n + B on which the coefficients vanish mod M
    Search {
        /// k for the k dots bracelet function, or any source
        source: String,
        #[arg(long)]
        amax: u64,
        #[arg(long = "mod", required = true)]
        moduli: Vec<u64>,
        #[arg(long, default_value_t = 200)]
        nmax: u64,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// List the claim families
    List,
}

fn config(caps: &Caps) -> RunConfig {
    let mut c = RunConfig::default();
    if let Some(cap) = caps.order_cap {
        c.mod_order_cap = cap;
    }
    if let Some(cap) = caps.exact_order_cap {
        c.exact_order_cap = cap;
    }
    c
}

fn parse_source(text: &str) -> Result<SeriesSource> {
    match text.parse::<u64>() {
        Ok(k) => {
            let s = SeriesSource::Bracelet(k);
            s.validate()?;
            Ok(s)
        }
        Err(_) => text.parse(),
    }
}

/// Splits `C6,C15[p=5,r=2]` at commas outside brackets.
fn split_selectors(items: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for item in items {
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in item.chars() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                ',' if depth == 0 => {
                    out.push(std::mem::take(&mut cur));
                    continue;
                }
                _ => {}
            }
            cur.push(ch);
        }
        out.push(cur);
    }
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Coeffs { source, n, order, modulus, format, caps } => {
            let n = match (n, order) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::InvalidParameter(format!("order given twice ({a} and {b})")));
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => 20,
            };
            let values = coefficients(&parse_source(&source)?, n, modulus, &config(&caps))?;
            emit(&render_coefficients(&values, format.parse()?)?);
            Ok(true)
        }
        Command::Dissect { source, step, residue, order, modulus, format, caps } => {
            let values =
                dissected_coefficients(&parse_source(&source)?, step, residue, order, modulus, &config(&caps))?;
            emit(&render_coefficients(&values, format.parse()?)?);
            Ok(true)
        }
        Command::Verify { claims, all, nmax, format, jobs, caps } => {
            let format: OutputFormat = format.parse()?;
            let selection: Vec<Selected> = if all || claims.is_empty() {
                default_claims()
            } else {
                let mut out = Vec::new();
                for s in split_selectors(&claims) {
                    out.extend(parse_claim_selector(&s)?);
                }
                out
            };
            let config = RunConfig { n_max: nmax, format, jobs, ..config(&caps) };
            let reports = verify(&selection, &config);
            emit(&render_reports(&reports, format)?);
            Ok(reports.iter().all(|r| r.is_ok()))
        }
        Command::Search { source, amax, moduli, nmax, format, jobs, caps } => {
            let config = RunConfig { jobs, ..config(&caps) };
            let found = search(&parse_source(&source)?, amax, &moduli, nmax, &config)?;
            emit(&render_candidates(&found, format.parse()?)?);
            Ok(true)
        }
        Command::List => {
            for f in builtin_claims() {
                let params = if f.params.is_empty() { String::new() } else { format!("[{}]", f.params.join(",")) };
                emit(&format!("{:<4}{:<12} {:?}  {}\n", f.family.to_string(), params, f.origin, f.statement));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
