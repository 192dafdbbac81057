//! Expectation-maximization estimate of the transitivity parameter ρ.
//!
//! Each iteration draws a fresh sample of edges uniformly (a π-sample start
//! node plus a uniform neighbor), computes the posterior probability that each
//! was laid by triangle closure rather than by the random surfer, and sets ρ
//! to the mean posterior.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{uniform_edge, Graph, NodeId, PiSampler};
use crate::seed::SeedStreams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmConfig {
    pub samples_per_iteration: usize,
    pub max_iterations: usize,
    /// Base `|Δρ|` threshold.
    pub tolerance: f64,
    /// Consecutive iterations that must fall under the threshold.
    pub stable_iterations: usize,
    pub rho_init: f64,
    pub seed: u64,
}

impl Default for EmConfig {
    fn default() -> Self {
        EmConfig {
            samples_per_iteration: 10_000,
            max_iterations: 100,
            tolerance: 1e-3,
            stable_iterations: 3,
            rho_init: 0.5,
            seed: 0,
        }
    }
}

impl EmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples_per_iteration == 0 {
            return Err(Error::InvalidParameter(
                "samples_per_iteration must be >= 1".into(),
            ));
        }
        if !(self.rho_init > 0.0 && self.rho_init < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rho_init must lie in (0, 1), got {}",
                self.rho_init
            )));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(Error::InvalidParameter("tolerance must be >= 0".into()));
        }
        Ok(())
    }
}

/// Posterior `E[z_ij]` for a sampled edge, `edge.0` being the walk start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeResponsibility {
    pub edge: (NodeId, NodeId),
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmIteration {
    pub iteration: usize,
    pub rho: f64,
    /// Standard error of this iteration's mean responsibility.
    pub std_error: f64,
    /// Wall time since the fit started, in seconds.
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmTrace {
    pub rho_init: f64,
    pub rho_final: f64,
    pub converged: bool,
    /// Wall time spent building the π-vector before the first iteration.
    pub setup_secs: f64,
    pub per_iteration: Vec<EmIteration>,
}

impl EmTrace {
    pub fn iterations(&self) -> usize {
        self.per_iteration.len()
    }

    /// ρ after every iteration, without timings.
    pub fn rho_path(&self) -> Vec<f64> {
        self.per_iteration.iter().map(|it| it.rho).collect()
    }
}

/// Posterior probability that `start → end` was laid by triangle closure:
///
/// `ρ·W / (ρ·W + (1 − ρ)·D_end / 2M)` with
/// `W = Σ_{k ∈ N(start) ∩ N(end)} 1 / (D_start · D_k)`.
///
/// When both terms vanish (ρ = 1 and no common neighbor) the edge cannot be
/// explained by closure and the result is 0.
pub fn e_step(g: &Graph, edge: (NodeId, NodeId), rho: f64) -> Result<EdgeResponsibility> {
    let (start, end) = edge;
    if !g.has_edge(start, end) {
        return Err(Error::NotAnEdge(start, end));
    }
    let (small, large) = if g.degree(start) <= g.degree(end) {
        (g.neighbors(start), g.neighbors(end))
    } else {
        (g.neighbors(end), g.neighbors(start))
    };
    let walk: f64 = small
        .iter()
        .filter(|k| large.contains(*k))
        .map(|&k| 1.0 / g.degree(k) as f64)
        .sum::<f64>()
        / g.degree(start) as f64;
    let closure = rho * walk;
    let surfer = (1.0 - rho) * g.degree(end) as f64 / (2 * g.edge_count()) as f64;
    let total = closure + surfer;
    let value = if total > 0.0 { closure / total } else { 0.0 };
    Ok(EdgeResponsibility { edge, value })
}

/// Maximum-likelihood ρ given responsibilities: their mean.
pub fn m_step(responsibilities: &[EdgeResponsibility]) -> Result<f64> {
    if responsibilities.is_empty() {
        return Err(Error::EmptySample);
    }
    let sum: f64 = responsibilities.iter().map(|r| r.value).sum();
    Ok(sum / responsibilities.len() as f64)
}

/// Runs EM on the `"fit"` stream of `cfg.seed`.
pub fn fit_rho(g: &Graph, cfg: &EmConfig) -> Result<EmTrace> {
    let mut rng = SeedStreams::new(cfg.seed).stream("fit");
    fit_rho_with(g, cfg, &mut rng)
}

/// Runs EM until `|Δρ|` stays below `tolerance + 3·SE` for
/// `stable_iterations` consecutive iterations, where SE is the standard error
/// of the newest iteration's sample mean, or until `max_iterations`.
pub fn fit_rho_with<R: Rng + ?Sized>(g: &Graph, cfg: &EmConfig, rng: &mut R) -> Result<EmTrace> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let started = Instant::now();
    let sampler = PiSampler::new(g);
    let setup_secs = started.elapsed().as_secs_f64();
    let mut rho = cfg.rho_init;
    let mut stable = 0;
    let mut converged = false;
    let mut per_iteration = Vec::new();
    let mut sample = Vec::with_capacity(cfg.samples_per_iteration);
    for iteration in 1..=cfg.max_iterations {
        sample.clear();
        for _ in 0..cfg.samples_per_iteration {
            sample.push(uniform_edge(g, &sampler, rng)?);
        }
        let responsibilities: Vec<EdgeResponsibility> = sample
            .par_iter()
            .map(|&edge| e_step(g, edge, rho))
            .collect::<Result<_>>()?;
        let next = m_step(&responsibilities)?.clamp(0.0, 1.0);
        let std_error = standard_error(&responsibilities, next);
        let delta = (next - rho).abs();
        rho = next;
        per_iteration.push(EmIteration {
            iteration,
            rho,
            std_error,
            elapsed_secs: started.elapsed().as_secs_f64(),
        });
        if delta < cfg.tolerance + 3.0 * std_error {
            stable += 1;
            if stable >= cfg.stable_iterations {
                converged = true;
                break;
            }
        } else {
            stable = 0;
        }
    }
    Ok(EmTrace {
        rho_init: cfg.rho_init,
        rho_final: rho,
        converged,
        setup_secs,
        per_iteration,
    })
}

fn standard_error(responsibilities: &[EdgeResponsibility], mean: f64) -> f64 {
    let n = responsibilities.len();
    if n < 2 {
        return 0.0;
    }
    let var = responsibilities
        .iter()
        .map(|r| (r.value - mean).powi(2))
        .sum::<f64>()
        / (n - 1) as f64;
    (var / n as f64).sqrt()
}
