//! Evaluation statistics: degree and clustering CCDFs, hop plots, and
//! distances between them.

mod ccdf;
mod clustering;
mod hop;
pub mod oracle;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use ccdf::{degree_ccdf, ks_distance, CcdfSeries};
pub use clustering::{clustering_ccdf, global_clustering, local_clustering};
pub use hop::{hop_plot, HopPlot, HopSources, DEFAULT_HOP_SOURCES, EXACT_HOP_PLOT_MAX_NODES};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsOptions {
    /// `None` picks [`HopSources::default_for`].
    pub hop_sources: Option<HopSources>,
    /// Count degree-1 nodes (coefficient 0) in the clustering CCDF.
    pub include_degree_one: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub n: usize,
    pub m: usize,
    pub degree_ccdf: CcdfSeries,
    pub clustering_ccdf: CcdfSeries,
    pub hop_plot: HopPlot,
    /// `None` when the graph has no connected triple.
    pub global_clustering: Option<f64>,
}

pub fn summarize<R: Rng + ?Sized>(g: &Graph, opts: &StatsOptions, rng: &mut R) -> StatsReport {
    let sources = opts
        .hop_sources
        .unwrap_or_else(|| HopSources::default_for(g.node_count()));
    StatsReport {
        n: g.node_count(),
        m: g.edge_count(),
        degree_ccdf: degree_ccdf(g),
        clustering_ccdf: clustering_ccdf(g, opts.include_degree_one),
        hop_plot: hop_plot(g, sources, rng),
        global_clustering: global_clustering(g).ok(),
    }
}

/// Largest gap between two hop plots over every hop count either records.
pub fn hop_gap(a: &HopPlot, b: &HopPlot) -> f64 {
    (1..=a.max_hops().max(b.max_hops()))
        .map(|h| (a.at(h) - b.at(h)).abs())
        .fold(0.0, f64::max)
}

/// Pointwise mean of several hop plots.
pub fn mean_hop_plot(plots: &[HopPlot]) -> HopPlot {
    let max_h = plots.iter().map(HopPlot::max_hops).max().unwrap_or(0);
    let count = plots.len().max(1) as f64;
    HopPlot {
        points: (1..=max_h)
            .map(|h| (h, plots.iter().map(|p| p.at(h)).sum::<f64>() / count))
            .collect(),
        sources_used: plots.iter().map(|p| p.sources_used).sum(),
        exact: plots.iter().all(|p| p.exact),
        finite_pairs: plots.iter().map(|p| p.finite_pairs).sum(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub degree_ks: f64,
    /// `None` if either graph has no node of degree ≥ 2.
    pub clustering_ks: Option<f64>,
    pub hop_plot_max_gap: f64,
}

pub fn compare(a: &StatsReport, b: &StatsReport) -> Comparison {
    Comparison {
        degree_ks: ks_distance(&a.degree_ccdf, &b.degree_ccdf).unwrap_or(0.0),
        clustering_ks: ks_distance(&a.clustering_ccdf, &b.clustering_ccdf).ok(),
        hop_plot_max_gap: hop_gap(&a.hop_plot, &b.hop_plot),
    }
}
