use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{AgedEdgeList, CollisionQueue, GenMetrics, GenParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, PiSampler};

/// Side information from the O(N²) reference generator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlowClOutcome {
    /// Pairs whose edge probability `D_ii·D_jj / 2M` exceeded 1 and was clamped.
    pub clamped_pairs: u64,
}

/// Reference Chung-Lu generator: every pair `{i, j}` gets an edge
/// independently with probability `min(1, D_ii·D_jj / 2M)`. Quadratic in N.
pub fn generate_cl_slow<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> (Graph, SlowClOutcome) {
    let degrees = g.degrees();
    let two_m = (2 * g.edge_count()) as f64;
    let active: Vec<NodeId> = (0..g.node_count() as NodeId)
        .filter(|&v| degrees[v as usize] > 0)
        .collect();
    let mut outcome = SlowClOutcome::default();
    let mut edges = Vec::new();
    for (pos, &i) in active.iter().enumerate() {
        let di = degrees[i as usize] as f64;
        for &j in &active[pos + 1..] {
            let p = di * degrees[j as usize] as f64 / two_m;
            if p >= 1.0 {
                if p > 1.0 {
                    outcome.clamped_pairs += 1;
                }
                edges.push((i, j));
            } else if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    (Graph::with_nodes(g.node_count(), edges), outcome)
}

/// Fast Chung-Lu: places exactly `M` distinct edges by pairing π-samples.
///
/// With `corrected`, both endpoints of a rejected placement (duplicate edge or
/// self-loop) enter the collision queue and are re-paired before any fresh
/// start node is drawn. Without it, rejected samples are discarded, which
/// under-represents high-degree nodes.
pub fn generate_cl_fast<R: Rng + ?Sized>(
    g: &Graph,
    sampler: &PiSampler,
    params: &GenParams,
    corrected: bool,
    rng: &mut R,
) -> Result<(Graph, GenMetrics)> {
    let (edges, metrics) = place_cl_edges(g, sampler, params, corrected, rng)?;
    Ok((edges.into_graph(), metrics))
}

/// [`generate_cl_fast`] (corrected) on the `"warmup"` stream of `params.seed`.
pub fn generate_cl_fast_seeded(
    g: &Graph,
    sampler: &PiSampler,
    params: &GenParams,
) -> Result<(Graph, GenMetrics)> {
    let mut rng = params.streams().stream("warmup");
    generate_cl_fast(g, sampler, params, true, &mut rng)
}

pub(crate) fn place_cl_edges<R: Rng + ?Sized>(
    g: &Graph,
    sampler: &PiSampler,
    params: &GenParams,
    corrected: bool,
    rng: &mut R,
) -> Result<(AgedEdgeList, GenMetrics)> {
    let target = g.edge_count();
    let mut edges = AgedEdgeList::with_degree_hint(&g.degrees());
    let mut metrics = GenMetrics::default();
    if target == 0 {
        return Ok((edges, metrics));
    }
    let budget = params.attempt_budget(target);
    let mut queue = CollisionQueue::new();
    while edges.len() < target {
        if metrics.attempts >= budget {
            return Err(Error::GraphTooDense {
                attempts: metrics.attempts,
                placed: edges.len(),
                target,
            });
        }
        metrics.attempts += 1;
        let (start, _) = queue.next_start(sampler, rng)?;
        let end = sampler.sample(rng)?;
        if edges.insert(start, end) {
            metrics.insertions += 1;
        } else {
            metrics.collisions += 1;
            if corrected {
                queue.reject(start, end);
                metrics.peak_queue = metrics.peak_queue.max(queue.len() as u64);
            }
        }
    }
    Ok((edges, metrics))
}
