use rand::Rng;

use super::chung_lu::place_cl_edges;
use super::{AgedEdgeList, CollisionQueue, GenMetrics, GenParams};
use crate::error::{Error, Result};
use crate::graph::{sample_neighbor, Graph, NeighborSet, NodeId, PiSampler};

/// Read access to neighbor sets, shared by the frozen [`Graph`] and the
/// working [`AgedEdgeList`].
pub trait Adjacency {
    fn neighbor_set(&self, node: NodeId) -> &NeighborSet;
}

impl Adjacency for Graph {
    fn neighbor_set(&self, node: NodeId) -> &NeighborSet {
        self.neighbors(node)
    }
}

impl Adjacency for AgedEdgeList {
    fn neighbor_set(&self, node: NodeId) -> &NeighborSet {
        self.neighbors(node)
    }
}

/// Two uniform neighbor steps `start → k → i` on the current adjacency.
/// The walk may return to `start`.
pub fn two_hop_walk<A, R>(adj: &A, start: NodeId, rng: &mut R) -> Result<NodeId>
where
    A: Adjacency + ?Sized,
    R: Rng + ?Sized,
{
    let mid = sample_neighbor(adj.neighbor_set(start), start, rng)?;
    sample_neighbor(adj.neighbor_set(mid), mid, rng)
}

/// Transitive Chung-Lu generation.
///
/// A corrected fast Chung-Lu graph seeds the edge list. Each replacement step
/// then takes a start node (collision queue first, else a π-sample), picks
/// the partner by a two-hop walk with probability `rho` or by a π-sample
/// otherwise, inserts the edge and evicts the oldest one. Rejected placements
/// enqueue both endpoints and evict nothing, so the edge count stays `M`.
pub fn generate_tcl<R: Rng + ?Sized>(
    g: &Graph,
    sampler: &PiSampler,
    params: &GenParams,
    rng: &mut R,
) -> Result<(Graph, GenMetrics)> {
    params.validate()?;
    let (mut work, mut metrics) = place_cl_edges(g, sampler, params, true, rng)?;
    metrics.merge(&replace_edges(
        &mut work,
        sampler,
        params,
        g.edge_count(),
        rng,
    )?);
    Ok((work.into_graph(), metrics))
}

/// [`generate_tcl`] with the warmup on the `"warmup"` stream and the
/// replacement phase on the `"replacement"` stream of `params.seed`. The
/// warmup is identical to [`super::generate_cl_fast_seeded`].
pub fn generate_tcl_seeded(
    g: &Graph,
    sampler: &PiSampler,
    params: &GenParams,
) -> Result<(Graph, GenMetrics)> {
    params.validate()?;
    let streams = params.streams();
    let (mut work, mut metrics) =
        place_cl_edges(g, sampler, params, true, &mut streams.stream("warmup"))?;
    let mut rng = streams.stream("replacement");
    metrics.merge(&replace_edges(
        &mut work,
        sampler,
        params,
        g.edge_count(),
        &mut rng,
    )?);
    Ok((work.into_graph(), metrics))
}

fn replace_edges<R: Rng + ?Sized>(
    work: &mut AgedEdgeList,
    sampler: &PiSampler,
    params: &GenParams,
    target: usize,
    rng: &mut R,
) -> Result<GenMetrics> {
    if target == 0 || saturated(sampler, work.node_count(), target) {
        return Ok(GenMetrics::default());
    }
    let iterations = params.iterations_for(target);
    let budget = params.attempt_budget(iterations.max(target));
    let mut metrics = GenMetrics::default();
    let mut queue = CollisionQueue::new();
    let mut replaced = 0usize;
    while replaced < iterations {
        if metrics.attempts >= budget {
            return Err(Error::GraphTooDense {
                attempts: metrics.attempts,
                placed: replaced,
                target: iterations,
            });
        }
        metrics.attempts += 1;
        let (start, _) = queue.next_start(sampler, rng)?;
        let end = if rng.gen_bool(params.rho) {
            match two_hop_walk(work, start, rng) {
                Ok(v) => v,
                Err(Error::IsolatedNode(_)) => {
                    metrics.fallbacks += 1;
                    sampler.sample(rng)?
                }
                Err(e) => return Err(e),
            }
        } else {
            sampler.sample(rng)?
        };
        if work.insert(start, end) {
            work.evict_oldest();
            metrics.insertions += 1;
            replaced += 1;
        } else {
            metrics.collisions += 1;
            queue.reject(start, end);
            metrics.peak_queue = metrics.peak_queue.max(queue.len() as u64);
        }
        debug_assert_eq!(work.len(), target);
    }
    Ok(metrics)
}

/// True when `m` edges already cover every pair of nodes with positive degree.
/// Every candidate is then a collision, so no replacement can ever succeed.
fn saturated(sampler: &PiSampler, node_count: usize, m: usize) -> bool {
    let mut seen = vec![false; node_count];
    let mut active = 0usize;
    for &id in sampler.ids() {
        if !std::mem::replace(&mut seen[id as usize], true) {
            active += 1;
        }
    }
    active * active.saturating_sub(1) / 2 == m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generator::generate_cl_fast_seeded;
    use crate::seed::SeedStreams;
    use crate::stats::{degree_ccdf, global_clustering, ks_distance};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rayon::prelude::*;

    const WALKS: usize = 100_000;

    fn landing(adj: &Graph, start: NodeId, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0usize; adj.node_count()];
        for _ in 0..WALKS {
            counts[two_hop_walk(adj, start, &mut rng).unwrap() as usize] += 1;
        }
        counts.iter().map(|&c| c as f64 / WALKS as f64).collect()
    }

    #[test]
    fn walk_on_path_is_forced_through_middle() {
        let g = Graph::from_edges([(0, 1), (1, 2)]);
        let f = landing(&g, 0, 1);
        assert!((f[0] - 0.5).abs() <= 0.01);
        assert!((f[2] - 0.5).abs() <= 0.01);
        assert_eq!(f[1], 0.0);
    }

    #[test]
    fn walk_from_star_leaf_is_uniform_over_leaves() {
        let g = Graph::from_edges((1..=4).map(|l| (0, l)));
        let f = landing(&g, 3, 2);
        for leaf in 1..=4 {
            assert!((f[leaf] - 0.25).abs() <= 0.01, "{f:?}");
        }
    }

    #[test]
    fn walk_from_isolated_node_errors() {
        let mut work = AgedEdgeList::new(3);
        work.insert(0, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            two_hop_walk(&work, 2, &mut rng),
            Err(Error::IsolatedNode(2))
        ));
    }

    #[test]
    fn edge_count_is_exactly_m() {
        let g = fixtures::heavy_tailed(400, 2.5, 2, 40, 5);
        let s = PiSampler::new(&g);
        for rho in [0.0, 0.5, 0.9] {
            let p = GenParams::with_rho(rho, 17);
            let (out, m) = generate_tcl_seeded(&g, &s, &p).unwrap();
            assert_eq!(out.edge_count(), g.edge_count());
            assert_eq!(out.node_count(), g.node_count());
            // warmup M + M replacements
            assert_eq!(m.insertions as usize, 2 * g.edge_count());
            assert_eq!(m.attempts, m.insertions + m.collisions);
        }
    }

    #[test]
    fn complete_seed_is_returned_unchanged() {
        let g = Graph::from_edges([(0, 1), (1, 2), (0, 2)]);
        let s = PiSampler::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (out, m) = generate_tcl(&g, &s, &GenParams::with_rho(0.5, 0), &mut rng).unwrap();
        assert_eq!(out, g);
        assert_eq!(m.insertions, 3);
    }

    #[test]
    fn rho_one_deadlocks_on_isolated_edge() {
        // Walks from either endpoint of a lone edge always return to the start,
        // so each rejection requeues two copies and the queue never drains.
        let mut edges: Vec<(NodeId, NodeId)> = (0..30).map(|v| (v, (v + 1) % 30)).collect();
        edges.push((40, 41));
        let g = Graph::from_edges(edges);
        let s = PiSampler::new(&g);
        let err = (0..20u64)
            .map(|seed| generate_tcl_seeded(&g, &s, &GenParams::with_rho(1.0, seed)))
            .find_map(Result::err);
        assert!(matches!(err, Some(Error::GraphTooDense { .. })));
    }

    #[test]
    fn single_edge_graph() {
        let g = Graph::from_edges([(0, 1)]);
        let s = PiSampler::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (out, _) = generate_tcl(&g, &s, &GenParams::with_rho(0.7, 0), &mut rng).unwrap();
        assert_eq!(out.sorted_edges(), vec![(0, 1)]);
    }

    #[test]
    fn zero_iterations_returns_warmup() {
        let g = fixtures::heavy_tailed(200, 2.5, 2, 30, 6);
        let s = PiSampler::new(&g);
        let p = GenParams {
            rho: 0.9,
            iterations: Some(0),
            seed: 5,
            max_attempts: None,
        };
        let (tcl, _) = generate_tcl_seeded(&g, &s, &p).unwrap();
        let (cl, _) = generate_cl_fast_seeded(&g, &s, &p).unwrap();
        assert_eq!(tcl.sorted_edges(), cl.sorted_edges());
    }

    #[test]
    fn rejects_bad_rho() {
        let g = Graph::from_edges([(0, 1)]);
        let s = PiSampler::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(generate_tcl(&g, &s, &GenParams::with_rho(2.0, 0), &mut rng).is_err());
    }

    #[test]
    fn transitive_fallback_is_counted() {
        // On a sparse seed some start nodes lose all their edges to eviction;
        // transitive steps from them must fall back, not fail.
        let g = fixtures::heavy_tailed(300, 2.2, 1, 30, 8);
        let s = PiSampler::new(&g);
        let total: u64 = (0..20)
            .map(|seed| {
                generate_tcl_seeded(&g, &s, &GenParams::with_rho(0.9, seed))
                    .unwrap()
                    .1
                    .fallbacks
            })
            .sum();
        assert!(total > 0);
    }

    #[test]
    fn rho_zero_matches_cl_degree_distribution() {
        let g = fixtures::heavy_tailed(500, 2.5, 2, 40, 9);
        let s = PiSampler::new(&g);
        let streams = SeedStreams::new(10);
        let pooled = |tcl: bool| {
            let runs: Vec<Graph> = (0..200u64)
                .into_par_iter()
                .map(|r| {
                    let p = GenParams::with_rho(0.0, streams.derive("run", r));
                    if tcl {
                        generate_tcl_seeded(&g, &s, &p).unwrap().0
                    } else {
                        generate_cl_fast_seeded(&g, &s, &p).unwrap().0
                    }
                })
                .collect();
            let edges: Vec<(NodeId, NodeId)> = runs
                .iter()
                .enumerate()
                .flat_map(|(k, out)| {
                    let off = (k * g.node_count()) as NodeId;
                    out.edges().map(move |(a, b)| (a + off, b + off))
                })
                .collect();
            Graph::with_nodes(runs.len() * g.node_count(), edges)
        };
        let d = ks_distance(&degree_ccdf(&pooled(true)), &degree_ccdf(&pooled(false))).unwrap();
        assert!(d <= 0.02, "ks {d}");
    }

    #[test]
    fn high_rho_raises_clustering() {
        let g = fixtures::heavy_tailed(1000, 2.5, 2, 60, 12);
        let s = PiSampler::new(&g);
        let mean_cc = |rho: f64| {
            (0..20u64)
                .map(|seed| {
                    let out = generate_tcl_seeded(&g, &s, &GenParams::with_rho(rho, seed))
                        .unwrap()
                        .0;
                    global_clustering(&out).unwrap()
                })
                .sum::<f64>()
                / 20.0
        };
        assert!(mean_cc(0.9) > mean_cc(0.0));
    }
}
