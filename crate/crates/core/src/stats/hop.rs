use std::collections::VecDeque;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeId};

/// Node count up to which hop plots use every node as a BFS source.
pub const EXACT_HOP_PLOT_MAX_NODES: usize = 10_000;
/// Sampled sources for larger graphs.
pub const DEFAULT_HOP_SOURCES: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopSources {
    All,
    Sample(usize),
}

impl HopSources {
    /// Exact for small graphs, sampled otherwise.
    pub fn default_for(node_count: usize) -> Self {
        if node_count <= EXACT_HOP_PLOT_MAX_NODES {
            HopSources::All
        } else {
            HopSources::Sample(DEFAULT_HOP_SOURCES)
        }
    }
}

/// Cumulative fraction of finite-distance ordered pairs `(s, t)`, `s ≠ t`,
/// within `h` hops. Unreachable pairs are left out of both numerator and
/// denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopPlot {
    pub points: Vec<(u32, f64)>,
    pub sources_used: usize,
    pub exact: bool,
    pub finite_pairs: u64,
}

impl HopPlot {
    /// Cumulative fraction at `h`; 1 past the last recorded hop.
    pub fn at(&self, h: u32) -> f64 {
        match self.points.iter().rev().find(|&&(x, _)| x <= h) {
            Some(&(_, y)) => y,
            None => 0.0,
        }
    }

    pub fn max_hops(&self) -> u32 {
        self.points.last().map_or(0, |p| p.0)
    }
}

pub fn hop_plot<R: Rng + ?Sized>(g: &Graph, sources: HopSources, rng: &mut R) -> HopPlot {
    let n = g.node_count();
    let (chosen, exact): (Vec<NodeId>, bool) = match sources {
        HopSources::Sample(k) if k < n => (
            index::sample(rng, n, k)
                .into_iter()
                .map(|v| v as NodeId)
                .collect(),
            false,
        ),
        _ => ((0..n as NodeId).collect(), true),
    };
    let histogram = chosen
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], VecDeque::new(), Vec::new()),
            |(dist, queue, touched), &s| bfs_histogram(g, s, dist, queue, touched),
        )
        .reduce(Vec::new, merge_histograms);
    let finite_pairs: u64 = histogram.iter().sum();
    let mut points = Vec::new();
    let mut running = 0u64;
    for (h, &count) in histogram.iter().enumerate().skip(1) {
        running += count;
        points.push((h as u32, running as f64 / finite_pairs as f64));
    }
    HopPlot {
        points,
        sources_used: chosen.len(),
        exact,
        finite_pairs,
    }
}

fn bfs_histogram(
    g: &Graph,
    source: NodeId,
    dist: &mut [u32],
    queue: &mut VecDeque<NodeId>,
    touched: &mut Vec<NodeId>,
) -> Vec<u64> {
    let mut histogram = vec![0u64];
    dist[source as usize] = 0;
    touched.push(source);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                let dv = du + 1;
                dist[v as usize] = dv;
                touched.push(v);
                queue.push_back(v);
                if histogram.len() <= dv as usize {
                    histogram.resize(dv as usize + 1, 0);
                }
                histogram[dv as usize] += 1;
            }
        }
    }
    for v in touched.drain(..) {
        dist[v as usize] = u32::MAX;
    }
    histogram
}

fn merge_histograms(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}
