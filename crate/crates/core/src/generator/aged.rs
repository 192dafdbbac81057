use std::collections::VecDeque;

use crate::graph::{ordered, Graph, NeighborSet, NodeId};

/// Mutable simple edge set that remembers insertion order, so the oldest edge
/// can be evicted in O(1).
#[derive(Debug, Clone)]
pub struct AgedEdgeList {
    adjacency: Vec<NeighborSet>,
    order: VecDeque<(NodeId, NodeId)>,
}

impl AgedEdgeList {
    pub fn new(node_count: usize) -> Self {
        let mut adjacency = Vec::with_capacity(node_count);
        adjacency.resize_with(node_count, NeighborSet::default);
        AgedEdgeList {
            adjacency,
            order: VecDeque::new(),
        }
    }

    pub fn with_capacity(node_count: usize, edges: usize) -> Self {
        let mut list = Self::new(node_count);
        list.order.reserve(edges);
        list
    }

    /// Empty list with each node's neighbor set sized for `degrees[node]`.
    pub fn with_degree_hint(degrees: &[usize]) -> Self {
        AgedEdgeList {
            adjacency: degrees
                .iter()
                .map(|&d| NeighborSet::with_capacity_and_hasher(d, Default::default()))
                .collect(),
            order: VecDeque::with_capacity(degrees.iter().sum::<usize>() / 2),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node as usize].len()
    }

    pub fn neighbors(&self, node: NodeId) -> &NeighborSet {
        &self.adjacency[node as usize]
    }

    #[inline]
    pub fn contains(&self, a: NodeId, b: NodeId) -> bool {
        let (sa, sb) = (&self.adjacency[a as usize], &self.adjacency[b as usize]);
        if sa.len() <= sb.len() {
            sa.contains(&b)
        } else {
            sb.contains(&a)
        }
    }

    /// Inserts `{a, b}` as the newest edge. Returns false (and changes
    /// nothing) for self-loops and existing edges.
    pub fn insert(&mut self, a: NodeId, b: NodeId) -> bool {
        if a == b || self.contains(a, b) {
            return false;
        }
        self.adjacency[a as usize].insert(b);
        self.adjacency[b as usize].insert(a);
        self.order.push_back(ordered(a, b));
        true
    }

    pub fn oldest(&self) -> Option<(NodeId, NodeId)> {
        self.order.front().copied()
    }

    /// Removes the edge with the earliest insertion time.
    pub fn evict_oldest(&mut self) -> Option<(NodeId, NodeId)> {
        let (a, b) = self.order.pop_front()?;
        self.adjacency[a as usize].swap_remove(&b);
        self.adjacency[b as usize].swap_remove(&a);
        Some((a, b))
    }

    /// Edges oldest first.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.order.iter().copied()
    }

    pub fn into_graph(self) -> Graph {
        let edges = self.order.len();
        Graph::from_parts(self.adjacency, edges)
    }
}
