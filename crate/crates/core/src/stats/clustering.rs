use crate::error::{Error, Result};
use crate::graph::Graph;

use super::CcdfSeries;

/// Local clustering coefficients `2·T_i / (D_ii (D_ii − 1))` of every node
/// with degree ≥ 2. With `include_degree_one`, degree-1 nodes contribute 0.
pub fn local_clustering(g: &Graph, include_degree_one: bool) -> Vec<f64> {
    let triangles = g.triangles_per_node();
    let min_degree = if include_degree_one { 1 } else { 2 };
    g.degrees()
        .into_iter()
        .zip(triangles)
        .filter(|&(d, _)| d >= min_degree)
        .map(|(d, t)| {
            if d < 2 {
                0.0
            } else {
                2.0 * t as f64 / (d * (d - 1)) as f64
            }
        })
        .collect()
}

/// CCDF of local clustering coefficients. Empty (population 0) when no node
/// qualifies.
pub fn clustering_ccdf(g: &Graph, include_degree_one: bool) -> CcdfSeries {
    CcdfSeries::from_values(&local_clustering(g, include_degree_one))
}

/// Transitivity: `3 · triangles / connected triples`.
pub fn global_clustering(g: &Graph) -> Result<f64> {
    let triples: u64 = g
        .degrees()
        .into_iter()
        .map(|d| (d as u64) * (d as u64).saturating_sub(1) / 2)
        .sum();
    if triples == 0 {
        return Err(Error::NoTriples);
    }
    Ok(3.0 * g.triangle_count() as f64 / triples as f64)
}
