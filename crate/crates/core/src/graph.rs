//! Simple undirected graphs and the constant-time samplers built on them.
//!
//! Node IDs are dense integers `0..N`. Each node keeps its neighbors in an
//! insertion-ordered hash set, which gives expected O(1) membership tests,
//! insertion, swap-removal and uniform neighbor draws.

use indexmap::IndexSet;
use rand::Rng;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};

pub type NodeId = u32;

/// Neighbor set of a single node.
pub type NeighborSet = IndexSet<NodeId, FxBuildHasher>;

/// Returns `(min, max)` of a node pair.
#[inline]
pub fn ordered(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<NeighborSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a simple graph from an arbitrary pair list. Duplicates, reversed
    /// duplicates and self-loops are dropped. The node count is `max ID + 1`.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::with_nodes(0, edges)
    }

    /// Like [`Graph::from_edges`] but guarantees at least `node_count` nodes,
    /// so trailing isolated nodes survive.
    pub fn with_nodes<I>(node_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency: Vec<NeighborSet> = Vec::new();
        adjacency.resize_with(node_count, NeighborSet::default);
        let mut edge_count = 0;
        for (a, b) in edges {
            let needed = a.max(b) as usize + 1;
            if adjacency.len() < needed {
                adjacency.resize_with(needed, NeighborSet::default);
            }
            if a == b {
                continue;
            }
            if adjacency[a as usize].insert(b) {
                adjacency[b as usize].insert(a);
                edge_count += 1;
            }
        }
        Graph {
            adjacency,
            edge_count,
        }
    }

    pub(crate) fn from_parts(adjacency: Vec<NeighborSet>, edge_count: usize) -> Self {
        debug_assert_eq!(
            adjacency.iter().map(|s| s.len()).sum::<usize>(),
            2 * edge_count
        );
        Graph {
            adjacency,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node as usize].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(|s| s.len()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn neighbors(&self, node: NodeId) -> &NeighborSet {
        &self.adjacency[node as usize]
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        let (a, b) = (a as usize, b as usize);
        if a >= self.adjacency.len() || b >= self.adjacency.len() {
            return false;
        }
        if self.adjacency[a].len() <= self.adjacency[b].len() {
            self.adjacency[a].contains(&(b as NodeId))
        } else {
            self.adjacency[b].contains(&(a as NodeId))
        }
    }

    /// Every undirected edge once, as `(i, j)` with `i < j`, in node order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, nbrs)| {
            let i = i as NodeId;
            nbrs.iter().filter(move |&&j| j > i).map(move |&j| (i, j))
        })
    }

    /// Edges as `(i, j)` with `i < j`, sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut edges: Vec<_> = self.edges().collect();
        edges.sort_unstable();
        edges
    }

    /// Draws a neighbor of `node` uniformly, i.e. one step of the walk with
    /// transition probabilities `A_jk / D_jj`.
    pub fn uniform_neighbor<R: Rng + ?Sized>(&self, node: NodeId, rng: &mut R) -> Result<NodeId> {
        sample_neighbor(&self.adjacency[node as usize], node, rng)
    }

    /// Number of triangles each node participates in.
    pub fn triangles_per_node(&self) -> Vec<u64> {
        let n = self.node_count();
        let mut counts = vec![0u64; n];
        // Orient every edge from lower to higher (degree, id) rank so each
        // triangle is found exactly once.
        let rank = |v: NodeId| (self.degree(v), v);
        let forward: Vec<Vec<NodeId>> = (0..n as NodeId)
            .map(|u| {
                self.neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&v| rank(v) > rank(u))
                    .collect()
            })
            .collect();
        for u in 0..n as NodeId {
            let fu = &forward[u as usize];
            for &v in fu {
                let fv = &forward[v as usize];
                // Iterate the smaller forward set, probe the other through the
                // full neighbor set plus the rank condition.
                let (scan, probe) = if fu.len() <= fv.len() {
                    (fu, v)
                } else {
                    (fv, u)
                };
                for &w in scan {
                    if rank(w) > rank(probe) && self.neighbors(probe).contains(&w) {
                        counts[u as usize] += 1;
                        counts[v as usize] += 1;
                        counts[w as usize] += 1;
                    }
                }
            }
        }
        counts
    }

    /// Total number of triangles.
    pub fn triangle_count(&self) -> u64 {
        self.triangles_per_node().iter().sum::<u64>() / 3
    }

    /// Disjoint union of `copies` copies of this graph.
    pub fn replicate(&self, copies: usize) -> Graph {
        let n = self.node_count();
        let mut adjacency = Vec::with_capacity(n * copies);
        for c in 0..copies {
            let offset = (c * n) as NodeId;
            for nbrs in &self.adjacency {
                adjacency.push(nbrs.iter().map(|&v| v + offset).collect());
            }
        }
        Graph::from_parts(adjacency, self.edge_count * copies)
    }
}

pub(crate) fn sample_neighbor<R: Rng + ?Sized>(
    nbrs: &NeighborSet,
    node: NodeId,
    rng: &mut R,
) -> Result<NodeId> {
    if nbrs.is_empty() {
        return Err(Error::IsolatedNode(node));
    }
    let idx = rng.gen_range(0..nbrs.len());
    Ok(nbrs[idx])
}

/// Flat node-ID vector of length `2M` where node `i` appears `D_ii` times,
/// so a uniform position draw returns `i` with probability `D_ii / 2M`.
#[derive(Debug, Clone)]
pub struct PiSampler {
    ids: Vec<NodeId>,
}

impl PiSampler {
    pub fn new(g: &Graph) -> Self {
        Self::from_degrees(&g.degrees())
    }

    pub fn from_degrees(degrees: &[usize]) -> Self {
        let total: usize = degrees.iter().sum();
        let mut ids = Vec::with_capacity(total);
        for (node, &d) in degrees.iter().enumerate() {
            ids.extend(std::iter::repeat(node as NodeId).take(d));
        }
        PiSampler { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<NodeId> {
        if self.ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(self.ids[rng.gen_range(0..self.ids.len())])
    }
}

/// Draws an undirected edge uniformly (probability `1/M` over both
/// orientations). The π-drawn endpoint comes first.
pub fn uniform_edge<R: Rng + ?Sized>(
    g: &Graph,
    sampler: &PiSampler,
    rng: &mut R,
) -> Result<(NodeId, NodeId)> {
    let start = sampler.sample(rng)?;
    let end = g.uniform_neighbor(start, rng)?;
    Ok((start, end))
}
