//! Monte-Carlo checks of the generators against their analytic targets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{
    generate_cl_fast, generate_cl_slow, generate_tcl, retry_bound, two_hop_walk, GenMetrics,
    GenParams,
};
use crate::graph::{ordered, Graph, NodeId, PiSampler};
use crate::seed::SeedStreams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    ClFast,
    ClFastUncorrected,
    ClSlow,
    Tcl { rho: f64 },
}

impl GeneratorKind {
    /// One graph from the seed graph `g`.
    pub fn generate(self, g: &Graph, sampler: &PiSampler, seed: u64) -> Result<Graph> {
        Ok(self.generate_with_metrics(g, sampler, seed)?.0)
    }

    /// Like [`GeneratorKind::generate`], plus placement counters for the
    /// sampling generators (`None` for slow CL).
    pub fn generate_with_metrics(
        self,
        g: &Graph,
        sampler: &PiSampler,
        seed: u64,
    ) -> Result<(Graph, Option<GenMetrics>)> {
        let params = GenParams::with_rho(
            match self {
                GeneratorKind::Tcl { rho } => rho,
                _ => 0.0,
            },
            seed,
        );
        let mut rng = SeedStreams::new(seed).stream("generate");
        let (out, metrics) = match self {
            GeneratorKind::ClFast => generate_cl_fast(g, sampler, &params, true, &mut rng)?,
            GeneratorKind::ClFastUncorrected => {
                generate_cl_fast(g, sampler, &params, false, &mut rng)?
            }
            GeneratorKind::ClSlow => return Ok((generate_cl_slow(g, &mut rng).0, None)),
            GeneratorKind::Tcl { .. } => generate_tcl(g, sampler, &params, &mut rng)?,
        };
        Ok((out, Some(metrics)))
    }
}

/// Generates `runs` graphs in parallel; run `r` uses the seed derived from
/// `seed` with label `"run"` and index `r`.
pub fn ensemble<T, F>(
    g: &Graph,
    kind: GeneratorKind,
    runs: usize,
    seed: u64,
    summarize: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Graph) -> T + Sync,
{
    let sampler = PiSampler::new(g);
    let streams = SeedStreams::new(seed);
    (0..runs as u64)
        .into_par_iter()
        .map(|r| {
            kind.generate(g, &sampler, streams.derive("run", r))
                .map(&summarize)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeProbability {
    pub edge: (NodeId, NodeId),
    /// Fraction of generated graphs containing the edge at the end of the run.
    pub frequency: f64,
    /// `min(1, D_ii·D_jj / 2M)` from the seed graph.
    pub analytic: f64,
}

pub fn analytic_edge_probability(g: &Graph, a: NodeId, b: NodeId) -> f64 {
    let two_m = (2 * g.edge_count()) as f64;
    if two_m == 0.0 {
        return 0.0;
    }
    (g.degree(a) as f64 * g.degree(b) as f64 / two_m).min(1.0)
}

/// Edges of the seed graph incident to its `top` highest-degree nodes.
pub fn top_degree_edges(g: &Graph, top: usize) -> Vec<(NodeId, NodeId)> {
    let mut nodes: Vec<NodeId> = (0..g.node_count() as NodeId).collect();
    nodes.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut edges: Vec<(NodeId, NodeId)> = nodes
        .into_iter()
        .take(top)
        .flat_map(|v| g.neighbors(v).iter().map(move |&u| ordered(u, v)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// End-of-run presence frequency of each watched pair over `runs` graphs.
pub fn empirical_edge_probabilities(
    g: &Graph,
    kind: GeneratorKind,
    runs: usize,
    watch: &[(NodeId, NodeId)],
    seed: u64,
) -> Result<Vec<EdgeProbability>> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be >= 1".into()));
    }
    let n = g.node_count() as NodeId;
    if let Some(&(a, b)) = watch.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::InvalidParameter(format!(
            "watched pair ({a}, {b}) references a node outside 0..{n}"
        )));
    }
    let hits = ensemble(g, kind, runs, seed, |out| {
        watch
            .iter()
            .map(|&(a, b)| u32::from(out.has_edge(a, b)))
            .collect::<Vec<u32>>()
    })?;
    let mut counts = vec![0u64; watch.len()];
    for run in hits {
        for (c, h) in counts.iter_mut().zip(run) {
            *c += u64::from(h);
        }
    }
    Ok(watch
        .iter()
        .zip(counts)
        .map(|(&(a, b), c)| EdgeProbability {
            edge: (a, b),
            frequency: c as f64 / runs as f64,
            analytic: analytic_edge_probability(g, a, b),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandingCheck {
    /// Total variation between pooled two-hop landing frequencies and π.
    pub total_variation: f64,
    pub walks: u64,
    /// Start nodes skipped because they were isolated in the generated graph.
    pub skipped_starts: u64,
}

/// Pools two-hop walk endpoints over `graphs` corrected fast-CL graphs
/// generated from `g`. Start nodes are drawn from π of `g`, as the
/// replacement step does.
pub fn two_hop_landing(
    g: &Graph,
    graphs: usize,
    walks_per_graph: usize,
    seed: u64,
) -> Result<LandingCheck> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let sampler = PiSampler::new(g);
    let streams = SeedStreams::new(seed);
    let per_graph: Vec<(Vec<u64>, u64)> = (0..graphs as u64)
        .into_par_iter()
        .map(|r| {
            let out = GeneratorKind::ClFast.generate(g, &sampler, streams.derive("run", r))?;
            let mut rng = streams.indexed("walks", r);
            let mut counts = vec![0u64; g.node_count()];
            let mut skipped = 0;
            for _ in 0..walks_per_graph {
                let start = sampler.sample(&mut rng)?;
                match two_hop_walk(&out, start, &mut rng) {
                    Ok(end) => counts[end as usize] += 1,
                    Err(Error::IsolatedNode(_)) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok((counts, skipped))
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; g.node_count()];
    let mut skipped = 0;
    for (c, s) in per_graph {
        skipped += s;
        for (t, x) in counts.iter_mut().zip(c) {
            *t += x;
        }
    }
    let walks: u64 = counts.iter().sum();
    let two_m = (2 * g.edge_count()) as f64;
    let total_variation = counts
        .iter()
        .enumerate()
        .map(|(v, &c)| {
            (c as f64 / walks.max(1) as f64 - g.degree(v as NodeId) as f64 / two_m).abs()
        })
        .sum::<f64>()
        / 2.0;
    Ok(LandingCheck {
        total_variation,
        walks,
        skipped_starts: skipped,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetryCheck {
    /// Mean over runs of attempts per successful insertion.
    pub mean_ratio: f64,
    pub max_ratio: f64,
    /// `1 / (1 - π_max)` of the seed graph.
    pub bound: f64,
    pub runs: usize,
    /// Placement counters summed over runs.
    pub totals: GenMetrics,
}

/// Retry ratios of `runs` generated graphs against the expected-attempt bound.
pub fn retry_check(g: &Graph, kind: GeneratorKind, runs: usize, seed: u64) -> Result<RetryCheck> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be >= 1".into()));
    }
    if kind == GeneratorKind::ClSlow {
        return Err(Error::InvalidParameter(
            "slow Chung-Lu places pairs independently and has no retries".into(),
        ));
    }
    let sampler = PiSampler::new(g);
    let streams = SeedStreams::new(seed);
    let metrics: Vec<GenMetrics> = (0..runs as u64)
        .into_par_iter()
        .map(|r| {
            let (_, m) = kind.generate_with_metrics(g, &sampler, streams.derive("run", r))?;
            Ok(m.unwrap_or_default())
        })
        .collect::<Result<_>>()?;
    let ratios: Vec<f64> = metrics.iter().map(GenMetrics::retry_ratio).collect();
    let mut totals = GenMetrics::default();
    for m in &metrics {
        totals.merge(m);
    }
    Ok(RetryCheck {
        mean_ratio: ratios.iter().sum::<f64>() / runs as f64,
        max_ratio: ratios.iter().cloned().fold(0.0, f64::max),
        bound: retry_bound(&g.degrees()),
        runs,
        totals,
    })
}
