//! The giant graph: every parse tree of the corpus concatenated on shared word
//! types, plus the POS tag co-occurrence counts over dependency arcs.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::conllu::{SentenceTree, Vocabulary};

/// Placeholder tag for a node whose word carries no tag histogram.
pub const UNKNOWN_TAG: &str = "_";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a node outside the graph")]
    NodeOutOfRange(u32, u32),
    #[error("self-loop on node {0}")]
    SelfLoop(u32),
    #[error("edge ({0}, {1}) has zero weight")]
    ZeroWeight(u32, u32),
    #[error("tag matrix has {found} entries, expected {expected}")]
    MatrixShape { expected: usize, found: usize },
    #[error("tag matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("duplicate tag {0:?}")]
    DuplicateTag(String),
    #[error("graphs have different node sets")]
    NodeMismatch,
}

/// Undirected graph over word types with integer arc-count weights.
///
/// Adjacency is stored in CSR form with each neighbor list sorted by node
/// index, so equal inputs always give identical layouts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GiantGraph {
    words: Vec<String>,
    tags: Vec<String>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    weights: Vec<u64>,
}

impl GiantGraph {
    /// Builds a graph from `(word, tag)` nodes and `(u, v, weight)` edges.
    /// Repeated edges (in either orientation) have their weights summed.
    pub fn from_edges<I>(nodes: Vec<(String, String)>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32, u64)>,
    {
        let n = nodes.len() as u32;
        let mut pairs = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange(u, v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(u, v));
            }
            pairs.push((u.min(v), u.max(v), w));
        }
        let (words, tags) = nodes.into_iter().unzip();
        Ok(Self::from_pairs(words, tags, pairs))
    }

    fn from_pairs(words: Vec<String>, tags: Vec<String>, mut pairs: Vec<(u32, u32, u64)>) -> Self {
        pairs.sort_unstable_by_key(|&(u, v, _)| (u, v));
        let mut merged: Vec<(u32, u32, u64)> = Vec::with_capacity(pairs.len());
        for (u, v, w) in pairs {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (u, v) => last.2 += w,
                _ => merged.push((u, v, w)),
            }
        }

        let n = words.len();
        let mut degree = vec![0usize; n];
        for &(u, v, _) in &merged {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        let mut weights = vec![0u64; offsets[n]];
        // Lower neighbors first, then higher ones: both passes walk `merged`
        // in (u, v) order, so every list comes out sorted.
        for &(u, v, w) in &merged {
            let slot = cursor[v as usize];
            neighbors[slot] = u;
            weights[slot] = w;
            cursor[v as usize] += 1;
        }
        for &(u, v, w) in &merged {
            let slot = cursor[u as usize];
            neighbors[slot] = v;
            weights[slot] = w;
            cursor[u as usize] += 1;
        }
        GiantGraph {
            words,
            tags,
            offsets,
            neighbors,
            weights,
        }
    }

    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, node: u32) -> &str {
        &self.words[node as usize]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Dominant POS tag of a node.
    pub fn tag(&self, node: u32) -> &str {
        &self.tags[node as usize]
    }

    pub fn node_of(&self, word: &str) -> Option<u32> {
        self.words.iter().position(|w| w == word).map(|i| i as u32)
    }

    pub fn degree(&self, node: u32) -> usize {
        let v = node as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `node`.
    pub fn neighbors(&self, node: u32) -> &[u32] {
        let v = node as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge weights parallel to [`neighbors`](Self::neighbors).
    pub fn weights(&self, node: u32) -> &[u64] {
        let v = node as usize;
        &self.weights[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Index of the directed edge `node -> neighbors(node)[pos]` in
    /// `0..2 * edge_count()`.
    pub fn arc_id(&self, node: u32, pos: usize) -> usize {
        self.offsets[node as usize] + pos
    }

    /// Total number of directed arcs, i.e. `2 * edge_count()`.
    pub fn arc_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Position of `other` in the neighbor list of `node`.
    pub fn neighbor_position(&self, node: u32, other: u32) -> Option<usize> {
        self.neighbors(node).binary_search(&other).ok()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbor_position(u, v).is_some()
    }

    pub fn edge_weight(&self, u: u32, v: u32) -> Option<u64> {
        self.neighbor_position(u, v).map(|i| self.weights(u)[i])
    }

    /// Each undirected edge once, as `(u, v, weight)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        (0..self.node_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .zip(self.weights(u))
                .filter(move |(&v, _)| v > u)
                .map(move |(&v, &w)| (u, v, w))
        })
    }

    pub fn total_weight(&self) -> u64 {
        self.edges().map(|(_, _, w)| w).sum()
    }

    /// Adds the edge weights of `other`, which must have the same nodes.
    pub fn merge(&self, other: &GiantGraph) -> Result<GiantGraph, GraphError> {
        if self.words != other.words || self.tags != other.tags {
            return Err(GraphError::NodeMismatch);
        }
        let pairs = self.edges().chain(other.edges()).collect();
        Ok(Self::from_pairs(
            self.words.clone(),
            self.tags.clone(),
            pairs,
        ))
    }
}

/// Symmetric counts of POS tag pairs at the two ends of dependency arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagTransitionMatrix {
    tags: Vec<String>,
    counts: Vec<u64>,
}

impl TagTransitionMatrix {
    /// An all-zero matrix over `tags` (sorted and deduplicated).
    pub fn zeros<I, S>(tags: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut tags: Vec<String> = tags.into_iter().map(Into::into).collect();
        tags.sort_unstable();
        tags.dedup();
        let n = tags.len();
        TagTransitionMatrix {
            tags,
            counts: vec![0; n * n],
        }
    }

    /// A matrix from explicit row-major counts. `tags` are kept in the given
    /// order and must be distinct; `counts` must be symmetric.
    pub fn from_counts(tags: Vec<String>, counts: Vec<u64>) -> Result<Self, GraphError> {
        let n = tags.len();
        if counts.len() != n * n {
            return Err(GraphError::MatrixShape {
                expected: n * n,
                found: counts.len(),
            });
        }
        for (i, t) in tags.iter().enumerate() {
            if tags[..i].contains(t) {
                return Err(GraphError::DuplicateTag(t.clone()));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if counts[a * n + b] != counts[b * n + a] {
                    return Err(GraphError::Asymmetric(a, b));
                }
            }
        }
        Ok(TagTransitionMatrix { tags, counts })
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tag_index(&self, tag: &str) -> Option<usize> {
        self.tags.iter().position(|t| t == tag)
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.counts[a * self.tags.len() + b]
    }

    pub fn row(&self, a: usize) -> &[u64] {
        let n = self.tags.len();
        &self.counts[a * n..(a + 1) * n]
    }

    pub fn row_sum(&self, a: usize) -> u64 {
        self.row(a).iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Row-major counts.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Counts one arc between tags `a` and `b`. Both orientations are
    /// incremented, so a same-tag arc adds 2 to the diagonal entry.
    pub fn add_arc(&mut self, a: usize, b: usize) {
        let n = self.tags.len();
        self.counts[a * n + b] += 1;
        self.counts[b * n + a] += 1;
    }

    /// Entry-wise sum over the union of both tag sets.
    pub fn merge(&self, other: &TagTransitionMatrix) -> TagTransitionMatrix {
        let mut out = TagTransitionMatrix::zeros(self.tags.iter().chain(&other.tags).cloned());
        let n = out.tags.len();
        for m in [self, other] {
            let map: Vec<usize> = m
                .tags
                .iter()
                .map(|t| out.tag_index(t).expect("tag in union"))
                .collect();
            for a in 0..m.tags.len() {
                for b in 0..m.tags.len() {
                    out.counts[map[a] * n + map[b]] += m.get(a, b);
                }
            }
        }
        out
    }
}

/// Arc accounting for one graph build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    /// Arcs that became edge weight and matrix counts.
    pub counted_arcs: u64,
    /// Arcs whose two ends are the same word type.
    pub self_arcs: u64,
    /// Arcs with an endpoint outside the vocabulary.
    pub oov_arcs: u64,
}

/// Concatenates the parse trees on shared word types.
///
/// Every arc between two distinct in-vocabulary word types adds 1 to their
/// edge weight and counts the pair of token tags in the matrix.
pub fn build_giant_graph(
    trees: &[SentenceTree],
    vocab: &Vocabulary,
) -> (GiantGraph, TagTransitionMatrix, BuildReport) {
    let vocab_tags = vocab.tag_set();
    let mut report = BuildReport::default();
    let mut pairs = Vec::new();
    let mut tag_pairs: BTreeMap<(&str, &str), u64> = BTreeMap::new();
    for tree in trees {
        for (head, dep) in tree.arcs() {
            let (Some(h), Some(d)) = (vocab.index_of(&head.form), vocab.index_of(&dep.form)) else {
                report.oov_arcs += 1;
                continue;
            };
            if h == d {
                report.self_arcs += 1;
                continue;
            }
            report.counted_arcs += 1;
            pairs.push((h.min(d), h.max(d), 1));
            let key = if head.upos <= dep.upos {
                (head.upos.as_str(), dep.upos.as_str())
            } else {
                (dep.upos.as_str(), head.upos.as_str())
            };
            *tag_pairs.entry(key).or_default() += 1;
        }
    }

    let node_tags: Vec<String> = (0..vocab.len() as u32)
        .map(|i| vocab.dominant_tag(i).unwrap_or(UNKNOWN_TAG).to_string())
        .collect();
    let arc_tags = tag_pairs.keys().flat_map(|&(a, b)| [a, b]);
    let mut matrix = TagTransitionMatrix::zeros(
        vocab_tags
            .iter()
            .map(String::as_str)
            .chain(node_tags.iter().map(String::as_str))
            .chain(arc_tags),
    );
    let n = matrix.len();
    for ((a, b), count) in tag_pairs {
        let (a, b) = (matrix.tag_index(a).unwrap(), matrix.tag_index(b).unwrap());
        matrix.counts[a * n + b] += count;
        matrix.counts[b * n + a] += count;
    }

    let graph = GiantGraph::from_pairs(vocab.words().to_vec(), node_tags, pairs);
    (graph, matrix, report)
}

/// Summary counts of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub total_weight: u64,
    /// degree -> number of nodes with that degree
    pub degree_histogram: BTreeMap<usize, usize>,
    pub isolated: usize,
}

pub fn graph_stats(graph: &GiantGraph) -> GraphStats {
    let mut degree_histogram = BTreeMap::new();
    for v in 0..graph.node_count() as u32 {
        *degree_histogram.entry(graph.degree(v)).or_default() += 1;
    }
    GraphStats {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        total_weight: graph.total_weight(),
        isolated: degree_histogram.get(&0).copied().unwrap_or(0),
        degree_histogram,
    }
}
