use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Step-function CCDF: each point `(x, y)` gives the fraction of the
/// population whose value strictly exceeds `x`. Points are sorted by `x`;
/// `x = 0` is always present for a non-empty population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfSeries {
    pub points: Vec<(f64, f64)>,
    /// Number of values the fractions are taken over.
    pub population: usize,
}

impl CcdfSeries {
    pub fn from_values(values: &[f64]) -> Self {
        let population = values.len();
        if population == 0 {
            return CcdfSeries {
                points: Vec::new(),
                population,
            };
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut xs = sorted.clone();
        xs.push(0.0);
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let at_most = sorted.partition_point(|&v| v <= x);
                (x, (population - at_most) as f64 / population as f64)
            })
            .collect();
        CcdfSeries { points, population }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Value of the step function at `x`. Left of the first point every
    /// member counts as exceeding `x`.
    pub fn at(&self, x: f64) -> f64 {
        let idx = self.points.partition_point(|&(px, _)| px <= x);
        if idx == 0 {
            1.0
        } else {
            self.points[idx - 1].1
        }
    }
}

/// Fraction of nodes with degree strictly greater than each observed degree.
pub fn degree_ccdf(g: &Graph) -> CcdfSeries {
    let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    CcdfSeries::from_values(&degrees)
}

/// Largest vertical gap between two CCDF step functions over the union of
/// their `x` values.
pub fn ks_distance(a: &CcdfSeries, b: &CcdfSeries) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySeries);
    }
    let gap = a
        .points
        .iter()
        .chain(&b.points)
        .map(|&(x, _)| (a.at(x) - b.at(x)).abs())
        .fold(0.0, f64::max);
    Ok(gap)
}
