//! Generalized Turán numbers `ex(n, T, F)`: exact values by orderly
//! generation at small `n`, randomized lower bounds beyond, the shadow chain
//! and a persistent witness cache.

pub mod cache;
pub mod canon;
mod exact;
mod heuristic;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use cache::{Cache, CacheKey};
pub use canon::{canonical_form, canonical_graph, canonical_key, is_canonical, CanonicalKey};
pub use exact::{exact_ex, ExactOptions, DEFAULT_SLOT_LIMIT, EXTENDED_SLOT_LIMIT};
pub use heuristic::{heuristic_lower, HeuristicOptions};

use crate::counting::{contains, count_copies};
use crate::error::{Error, Result};
use crate::hypercore::{shadow, UniformHypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Heuristic => "heuristic",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Hypergraphs visited.
    pub nodes: u64,
    pub elapsed: Duration,
    /// Whether the time budget ran out before the search finished.
    pub timed_out: bool,
}

/// A value of `ex(n, T, F)` with a witness attaining it.
#[derive(Clone, Debug)]
pub struct ExtremalRecord {
    pub n: usize,
    pub pattern: UniformHypergraph,
    pub forbidden: UniformHypergraph,
    pub value: u64,
    pub witness: UniformHypergraph,
    pub mode: Mode,
    pub stats: SearchStats,
}

impl ExtremalRecord {
    pub fn uniformity(&self) -> usize {
        self.witness.uniformity()
    }

    /// Re-checks that the witness has `n` vertices, is `F`-free and holds
    /// exactly `value` copies of `T`.
    pub fn verify(&self) -> Result<()> {
        if self.witness.n() != self.n {
            return Err(Error::Verification(format!(
                "witness has {} vertices, record is for n = {}",
                self.witness.n(),
                self.n
            )));
        }
        if let Some(emb) = contains(&self.witness, &self.forbidden)? {
            return Err(Error::Verification(format!(
                "witness contains the forbidden hypergraph via {:?}",
                emb.map()
            )));
        }
        let count = count_copies(&self.witness, &self.pattern)?;
        if count != self.value {
            return Err(Error::Verification(format!(
                "witness holds {count} copies, record claims {}",
                self.value
            )));
        }
        Ok(())
    }
}

/// One stage `ex(n, K_r^{(s)}, ∂^{(s)} F)` of the shadow chain.
#[derive(Clone, Debug)]
pub struct ChainStage {
    pub s: usize,
    pub record: ExtremalRecord,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub n: usize,
    pub r: usize,
    pub stages: Vec<ChainStage>,
}

impl ChainReport {
    pub fn values(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.record.value).collect()
    }

    /// Whether the values never decrease as `s` grows.
    pub fn is_non_decreasing(&self) -> bool {
        self.values().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn first_violation(&self) -> Option<(usize, usize)> {
        self.stages
            .windows(2)
            .find(|w| w[0].record.value > w[1].record.value)
            .map(|w| (w[0].s, w[1].s))
    }
}

/// Exact values of `ex(n, K_r^{(s)}, ∂^{(s)} F)` for `s = 2..=r`, where `r`
/// is the uniformity of `F`. Every stage must be within the exact guard.
pub fn chain_check(n: usize, f: &UniformHypergraph, opts: &ExactOptions) -> Result<ChainReport> {
    let r = f.uniformity();
    if r < 3 {
        return Err(Error::InvalidParameter(format!(
            "the shadow chain needs a hypergraph of uniformity at least 3, got {r}"
        )));
    }
    let mut stages = Vec::with_capacity(r - 1);
    for s in 2..=r {
        let t = UniformHypergraph::complete(r, s)?;
        let fs = shadow(f, s)?;
        let record = exact_ex(n, &t, &fs, opts)?;
        if record.mode != Mode::Exact {
            return Err(Error::Infeasible(format!(
                "chain stage s = {s} did not finish within the time budget"
            )));
        }
        stages.push(ChainStage { s, record });
    }
    Ok(ChainReport { n, r, stages })
}

/// One CSV row `n,T-key,F-key,value,mode`.
pub fn csv_row(record: &ExtremalRecord) -> Result<String> {
    Ok(format!(
        "{},{},{},{},{}",
        record.n,
        canonical_key(&record.pattern)?,
        canonical_key(&record.forbidden)?,
        record.value,
        record.mode
    ))
}

pub const CSV_HEADER: &str = "n,T-key,F-key,value,mode";

/// CSV table of records, header first.
pub fn export_csv(records: &[ExtremalRecord]) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&csv_row(r)?);
        out.push('\n');
    }
    Ok(out)
}
