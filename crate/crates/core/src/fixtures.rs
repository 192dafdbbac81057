//! Deterministic synthetic seed graphs used by tests, benchmarks and the
//! shipped fixture files.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;

use crate::generator::{generate_tcl_seeded, GenParams};
use crate::graph::{Graph, NodeId, PiSampler};
use crate::seed::SeedStreams;

/// Erased configuration model over i.i.d. degrees with
/// `P(d) ∝ d^-exponent` on `[min_degree, max_degree]`.
///
/// Stubs are shuffled and paired; self-loops and repeated pairs are dropped,
/// so realized degrees can fall slightly below their targets.
pub fn heavy_tailed(
    nodes: usize,
    exponent: f64,
    min_degree: usize,
    max_degree: usize,
    seed: u64,
) -> Graph {
    assert!(min_degree >= 1 && min_degree <= max_degree);
    let mut rng = SeedStreams::new(seed).stream("fixture");
    let support: Vec<usize> = (min_degree..=max_degree).collect();
    let weights: Vec<f64> = support
        .iter()
        .map(|&d| (d as f64).powf(-exponent))
        .collect();
    let dist = WeightedIndex::new(&weights).expect("positive weights");
    let mut degrees: Vec<usize> = (0..nodes).map(|_| support[dist.sample(&mut rng)]).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        // Bump the smallest entry to keep the stub count even.
        let (idx, _) = degrees
            .iter()
            .enumerate()
            .min_by_key(|&(_, &d)| d)
            .expect("non-empty");
        degrees[idx] += 1;
    }
    let mut stubs: Vec<NodeId> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat(v as NodeId).take(d))
        .collect();
    stubs.shuffle(&mut rng);
    Graph::with_nodes(nodes, stubs.chunks_exact(2).map(|p| (p[0], p[1])))
}

/// 201 nodes: node 0 is a hub of degree 50, every other node has degree 2.
///
/// The hub's neighbors `1..=50` are paired off among themselves; nodes
/// `51..=200` form a cycle.
pub fn hub_graph() -> Graph {
    let mut edges: Vec<(NodeId, NodeId)> = (1..=50).map(|v| (0, v)).collect();
    edges.extend((1..=50).step_by(2).map(|v| (v, v + 1)));
    edges.extend((51..=200).map(|v| (v, if v == 200 { 51 } else { v + 1 })));
    Graph::with_nodes(201, edges)
}

/// The graphs shipped under `fixtures/`, keyed by file name.
///
/// `tcl_rho08.txt` is a TCL sample at `rho = 0.8`, seed 7, of `seed1000.txt`.
pub fn shipped() -> Vec<(&'static str, Graph)> {
    let seed1000 = heavy_tailed(1000, 2.5, 2, 50, 7);
    let sampler = PiSampler::new(&seed1000);
    let (tcl, _) = generate_tcl_seeded(&seed1000, &sampler, &GenParams::with_rho(0.8, 7))
        .expect("fixture generation");
    vec![
        ("seed1000.txt", seed1000),
        ("seed500.txt", heavy_tailed(500, 2.5, 2, 40, 3)),
        ("skewed300.txt", heavy_tailed(300, 1.8, 4, 20, 3)),
        ("hub201.txt", hub_graph()),
        ("tcl_rho08.txt", tcl),
        ("triangle.txt", cycle(3)),
        ("four_cycle.txt", cycle(4)),
    ]
}

/// Cycle on `n` nodes.
pub fn cycle(n: u32) -> Graph {
    Graph::from_edges((0..n).map(|i| (i, (i + 1) % n)))
}
