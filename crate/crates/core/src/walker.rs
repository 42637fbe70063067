//! Walk corpus generation.

use alloc::vec::Vec;
use core::ops::Deref;
use rand_core::RngCore;

use crate::rng;
use crate::transition::{StepScratch, TransitionIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WalkConfigError {
    #[error("walks per node must be at least 1")]
    ZeroWalks,
    #[error("walk length must be at least 1")]
    ZeroLength,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WalkConfig {
    walks_per_node: usize,
    walk_length: usize,
    seed: u64,
}

impl WalkConfig {
    /// `walk_length` counts nodes, including the start node.
    pub fn new(walks_per_node: usize, walk_length: usize, seed: u64) -> Result<Self, WalkConfigError> {
        if walks_per_node == 0 {
            return Err(WalkConfigError::ZeroWalks);
        }
        if walk_length == 0 {
            return Err(WalkConfigError::ZeroLength);
        }
        Ok(WalkConfig {
            walks_per_node,
            walk_length,
            seed,
        })
    }

    pub fn walks_per_node(&self) -> usize {
        self.walks_per_node
    }

    pub fn walk_length(&self) -> usize {
        self.walk_length
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            walks_per_node: 10,
            walk_length: 80,
            seed: 0,
        }
    }
}

/// A sequence of node indices where consecutive nodes are adjacent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Walk(Vec<u32>);

impl Walk {
    pub fn new(nodes: Vec<u32>) -> Self {
        Walk(nodes)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for Walk {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl AsRef<[u32]> for Walk {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Walk {
    fn from(nodes: Vec<u32>) -> Self {
        Walk(nodes)
    }
}

/// Walks `length` nodes from `start`. The walk stops early only if `start`
/// has no neighbors, in which case it is just `[start]`.
pub fn syntree2vec_walk<R: RngCore + ?Sized>(
    index: &TransitionIndex<'_>,
    start: u32,
    length: usize,
    rng: &mut R,
) -> Walk {
    let mut out = Vec::with_capacity(length);
    walk_into(index, start, length, &mut StepScratch::default(), rng, &mut out);
    Walk(out)
}

fn walk_into<R: RngCore + ?Sized>(
    index: &TransitionIndex<'_>,
    start: u32,
    length: usize,
    scratch: &mut StepScratch,
    rng: &mut R,
    out: &mut Vec<u32>,
) {
    let graph = index.graph();
    out.clear();
    out.push(start);
    if length < 2 {
        return;
    }
    let Some(mut pos) = index.sample_first(start, scratch, rng) else {
        return;
    };
    let mut prev = start;
    let mut cur = graph.neighbors(start)[pos];
    out.push(cur);
    while out.len() < length {
        let next = index.sample_next(prev, pos, scratch, rng);
        prev = cur;
        pos = next;
        cur = graph.neighbors(prev)[pos];
        out.push(cur);
    }
}

/// The walk starting at `node` in round `iteration`.
///
/// Each walk draws from its own stream keyed by `(seed, iteration, node)`,
/// so any subset of walks can be produced in any order, on any thread, with
/// the same result.
pub fn walk_for(
    index: &TransitionIndex<'_>,
    config: &WalkConfig,
    iteration: usize,
    node: u32,
    scratch: &mut StepScratch,
) -> Walk {
    let mut rng = rng::stream(config.seed, &[iteration as u64, node as u64]);
    let mut out = Vec::with_capacity(config.walk_length);
    walk_into(index, node, config.walk_length, scratch, &mut rng, &mut out);
    Walk(out)
}

/// `walks_per_node` rounds, each starting one walk at every node, in
/// `(iteration, node)` order.
pub fn generate_walks(index: &TransitionIndex<'_>, config: &WalkConfig) -> Vec<Walk> {
    let n = index.graph().node_count();
    let mut scratch = StepScratch::default();
    let mut walks = Vec::with_capacity(config.walks_per_node * n);
    for iteration in 0..config.walks_per_node {
        for node in 0..n as u32 {
            walks.push(walk_for(index, config, iteration, node, &mut scratch));
        }
    }
    walks
}
