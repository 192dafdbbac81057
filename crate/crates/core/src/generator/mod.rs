//! Chung-Lu and Transitive Chung-Lu graph generators.
//!
//! All generators reproduce the degree sequence of a seed graph in
//! expectation. The fast variants place edges by drawing endpoints from the
//! π-vector and use a FIFO collision queue so that nodes whose placement was
//! rejected are re-paired before any fresh start node is drawn.

mod aged;
mod chung_lu;
mod queue;
mod tcl;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::SeedStreams;

pub use aged::AgedEdgeList;
pub use chung_lu::{generate_cl_fast, generate_cl_fast_seeded, generate_cl_slow, SlowClOutcome};
pub use queue::CollisionQueue;
pub use tcl::{generate_tcl, generate_tcl_seeded, two_hop_walk, Adjacency};

/// Attempts allowed per required placement before giving up.
pub const ATTEMPTS_PER_EDGE: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Probability of closing a triangle instead of surfing to a π-sample.
    pub rho: f64,
    /// Successful replacements after the warmup; `None` means `M`.
    pub iterations: Option<usize>,
    pub seed: u64,
    /// Placement attempt budget per phase; `None` means 100 per placement.
    pub max_attempts: Option<u64>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            rho: 0.0,
            iterations: None,
            seed: 0,
            max_attempts: None,
        }
    }
}

impl GenParams {
    pub fn with_rho(rho: f64, seed: u64) -> Self {
        GenParams {
            rho,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.rho) || self.rho.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in [0, 1], got {}",
                self.rho
            )));
        }
        if self.max_attempts == Some(0) {
            return Err(Error::InvalidParameter("max_attempts must be >= 1".into()));
        }
        Ok(())
    }

    pub fn iterations_for(&self, edge_count: usize) -> usize {
        self.iterations.unwrap_or(edge_count)
    }

    pub(crate) fn attempt_budget(&self, placements: usize) -> u64 {
        self.max_attempts
            .unwrap_or_else(|| ATTEMPTS_PER_EDGE * placements.max(1) as u64)
    }

    pub fn streams(&self) -> SeedStreams {
        SeedStreams::new(self.seed)
    }
}

/// Counters collected while placing edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenMetrics {
    pub attempts: u64,
    pub insertions: u64,
    pub collisions: u64,
    /// Transitive steps that started at a node with no current neighbors and
    /// fell back to a π-sample.
    pub fallbacks: u64,
    /// Longest the collision queue grew.
    pub peak_queue: u64,
}

impl GenMetrics {
    /// Mean attempts per successful insertion.
    pub fn retry_ratio(&self) -> f64 {
        if self.insertions == 0 {
            return 0.0;
        }
        self.attempts as f64 / self.insertions as f64
    }

    pub fn merge(&mut self, other: &GenMetrics) {
        self.attempts += other.attempts;
        self.insertions += other.insertions;
        self.collisions += other.collisions;
        self.fallbacks += other.fallbacks;
        self.peak_queue = self.peak_queue.max(other.peak_queue);
    }
}

/// Expected-attempt bound `1 / (1 - π_max)` for a degree sequence.
pub fn retry_bound(degrees: &[usize]) -> f64 {
    let two_m: usize = degrees.iter().sum();
    if two_m == 0 {
        return 1.0;
    }
    let pi_max = *degrees.iter().max().unwrap() as f64 / two_m as f64;
    1.0 / (1.0 - pi_max)
}
