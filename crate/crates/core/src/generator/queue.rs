use std::collections::VecDeque;

use rand::Rng;

use crate::error::Result;
use crate::graph::{NodeId, PiSampler};

/// FIFO of nodes owed an edge after a rejected placement.
#[derive(Debug, Clone, Default)]
pub struct CollisionQueue {
    pending: VecDeque<NodeId>,
}

/// Where a start node came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum StartSource {
    Queue,
    Fresh,
}

impl CollisionQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, node: NodeId) {
        self.pending.push_back(node);
    }

    pub fn pop(&mut self) -> Option<NodeId> {
        self.pending.pop_front()
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn clear(&mut self) {
        self.pending.clear();
    }

    /// Records a rejected placement: the end node first, then the start.
    pub fn reject(&mut self, start: NodeId, end: NodeId) {
        self.push(end);
        self.push(start);
    }

    /// Pops a queued node, or draws a fresh one from π when the queue is empty.
    pub(crate) fn next_start<R: Rng + ?Sized>(
        &mut self,
        sampler: &PiSampler,
        rng: &mut R,
    ) -> Result<(NodeId, StartSource)> {
        match self.pop() {
            Some(v) => Ok((v, StartSource::Queue)),
            None => Ok((sampler.sample(rng)?, StartSource::Fresh)),
        }
    }
}
