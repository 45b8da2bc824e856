use std::collections::HashMap;

use rayon::prelude::*;

use crate::catalog::SeriesSource;
use crate::error::Result;
use crate::ring::{ModRing, RingKind};
use crate::series::TruncatedSeries;
use crate::{Exact, ExactSeries, ModSeries};

type Key = (SeriesSource, RingKind);

#[derive(Debug)]
enum Entry {
    Exact(ExactSeries),
    Mod(ModSeries),
}

/// Expansions shared across claims.
///
/// Orders are planned first, then every `(source, ring)` pair is expanded
/// once at the largest order any claim asked for. After
/// [`SeriesCache::populate`] the cache is read-only.
#[derive(Debug, Default)]
pub struct SeriesCache {
    plan: HashMap<Key, usize>,
    entries: HashMap<Key, Result<Entry>>,
    expansions: usize,
}

impl SeriesCache {
    pub fn new() -> Self {
        SeriesCache::default()
    }

    pub fn request(&mut self, source: &SeriesSource, ring: RingKind, order: usize) {
        let slot = self.plan.entry((source.clone(), ring)).or_insert(0);
        *slot = (*slot).max(order);
    }

    /// Expands every planned pair, in parallel.
    pub fn populate(&mut self) {
        let todo: Vec<(Key, usize)> =
            self.plan.iter().filter(|(k, _)| !self.entries.contains_key(*k)).map(|(k, n)| (k.clone(), *n)).collect();
        let built: Vec<(Key, Result<Entry>)> =
            todo.into_par_iter().map(|((s, ring), n)| ((s.clone(), ring), expand(&s, ring, n))).collect();
        self.expansions += built.len();
        self.entries.extend(built);
    }

    /// Number of expansions performed so far.
    pub fn expansions(&self) -> usize {
        self.expansions
    }

    pub fn exact(&self, source: &SeriesSource, order: usize) -> Result<ExactSeries> {
        match self.entries.get(&(source.clone(), RingKind::Exact)) {
            Some(Ok(Entry::Exact(s))) if s.order() >= order => Ok(s.truncate(order)),
            Some(Err(e)) => Err(e.clone()),
            _ => source.expand(&Exact::new(), order),
        }
    }

    pub fn modular(&self, source: &SeriesSource, modulus: u64, order: usize) -> Result<ModSeries> {
        match self.entries.get(&(source.clone(), RingKind::Mod(modulus))) {
            Some(Ok(Entry::Mod(s))) if s.order() >= order => Ok(s.truncate(order)),
            Some(Err(e)) => Err(e.clone()),
            _ => source.expand(&ModRing::new(modulus)?, order),
        }
    }
}

fn expand(source: &SeriesSource, ring: RingKind, order: usize) -> Result<Entry> {
    match ring {
        RingKind::Exact => Ok(Entry::Exact(source.expand(&Exact::new(), order)?)),
        RingKind::Mod(m) => {
            let ring = ModRing::new(m)?;
            let s: TruncatedSeries<ModRing> = source.expand(&ring, order)?;
            Ok(Entry::Mod(s))
        }
    }
}
