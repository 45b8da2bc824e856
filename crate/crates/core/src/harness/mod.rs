//! Verification engine: sizes and expands the series every selected claim
//! needs, checks the claims, and renders reports.

mod cache;
mod dump;
mod report;
mod search;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RingKind;

pub use cache::SeriesCache;
pub use dump::{coefficients, dissected_coefficients, render_coefficients};
pub use report::{render_reports, Counterexample, Status, VerificationReport};
pub use search::{render_candidates, search, Candidate, CANDIDATE_NOTE};
pub use verify::{recheck, verify, verify_claims};

/// Default order cap for modular rings.
pub const DEFAULT_MOD_ORDER_CAP: u64 = 50_000;
/// Default order cap for the exact ring.
pub const DEFAULT_EXACT_ORDER_CAP: u64 = 2_000;
/// Overrides [`DEFAULT_MOD_ORDER_CAP`].
pub const ORDER_CAP_ENV: &str = "BRACELET_ORDER_CAP";
/// Overrides [`DEFAULT_EXACT_ORDER_CAP`].
pub const EXACT_ORDER_CAP_ENV: &str = "BRACELET_EXACT_ORDER_CAP";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Parse { what: "output format", input: s.into() }),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Overrides every claim's own default `n_max`.
    pub n_max: Option<u64>,
    pub mod_order_cap: u64,
    pub exact_order_cap: u64,
    pub format: OutputFormat,
    /// Worker threads; 0 lets the thread pool decide.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_max: None,
            mod_order_cap: DEFAULT_MOD_ORDER_CAP,
            exact_order_cap: DEFAULT_EXACT_ORDER_CAP,
            format: OutputFormat::Text,
            jobs: 0,
        }
    }
}

impl RunConfig {
    /// Defaults with the order caps taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let read = |name: &str, default: u64| -> Result<u64> {
            match std::env::var(name) {
                Ok(v) => v.trim().parse().map_err(|_| Error::Parse { what: "order cap", input: v }),
                Err(_) => Ok(default),
            }
        };
        Ok(RunConfig {
            mod_order_cap: read(ORDER_CAP_ENV, DEFAULT_MOD_ORDER_CAP)?,
            exact_order_cap: read(EXACT_ORDER_CAP_ENV, DEFAULT_EXACT_ORDER_CAP)?,
            ..RunConfig::default()
        })
    }

    pub fn order_cap(&self, ring: RingKind) -> u64 {
        match ring {
            RingKind::Exact => self.exact_order_cap,
            RingKind::Mod(_) => self.mod_order_cap,
        }
    }

    pub(crate) fn check_cap(&self, ring: RingKind, required: u64) -> Result<()> {
        let cap = self.order_cap(ring);
        if required > cap {
            return Err(Error::TruncationExceedsCap { required, cap });
        }
        Ok(())
    }

    /// Runs `f` on a pool with `jobs` threads.
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.jobs == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
