//! Second-order transition probabilities and their alias-table index.
//!
//! The unnormalized weight of stepping from `v` to its neighbor `x`, having
//! arrived from `t`, is
//!
//! ```text
//! pi(t, v, x) = alpha(t, x) * w(v, x) * bias(tag(v), tag(x))
//! ```
//!
//! where `alpha` is `1/p`, `1` or `1/q` for hop distance 0, 1 or 2 between
//! `t` and `x`, `w` is the arc count on the edge, and `bias` is the tag
//! matrix entry normalized over the row of `tag(v)`. When the bias is zero
//! for every neighbor of `v` (a sparse row, typically at leaves) the bias
//! factor is dropped and the walk falls back to `alpha * w`. On the first
//! step there is no `t` and `alpha` is 1.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use rand_core::RngCore;

use crate::alias::{self, AliasError, AliasRef, Column};
use crate::graph::{GiantGraph, TagTransitionMatrix};

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum TransitionError {
    #[error("{name} must be positive and finite, got {value}")]
    InvalidParam { name: &'static str, value: f64 },
    #[error("hop distance must be 0, 1 or 2, got {0}")]
    InvalidHop(u8),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(u32, u32),
    #[error("node {0} has no neighbors")]
    Isolated(u32),
    #[error("transition table: {0}")]
    Alias(#[from] AliasError),
}

/// Return parameter `p` and in-out parameter `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkParams {
    p: f64,
    q: f64,
}

impl WalkParams {
    pub fn new(p: f64, q: f64) -> Result<Self, TransitionError> {
        for (name, value) in [("p", p), ("q", q)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(TransitionError::InvalidParam { name, value });
            }
        }
        Ok(WalkParams { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams { p: 1.0, q: 1.0 }
    }
}

/// Shortest-path distance between the previous node `t` and a candidate `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HopDistance {
    /// `x == t`
    Return,
    /// `x` is a neighbor of `t`
    Adjacent,
    Away,
}

impl TryFrom<u8> for HopDistance {
    type Error = TransitionError;

    fn try_from(d: u8) -> Result<Self, Self::Error> {
        match d {
            0 => Ok(HopDistance::Return),
            1 => Ok(HopDistance::Adjacent),
            2 => Ok(HopDistance::Away),
            _ => Err(TransitionError::InvalidHop(d)),
        }
    }
}

/// Search bias: `1/p` for a return, `1` for a neighbor of `t`, `1/q` otherwise.
#[inline]
pub fn alpha(params: WalkParams, d: HopDistance) -> f64 {
    match d {
        HopDistance::Return => 1.0 / params.p,
        HopDistance::Adjacent => 1.0,
        HopDistance::Away => 1.0 / params.q,
    }
}

/// Which factors enter the transition weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BiasMode {
    /// `alpha * w * tag bias`, with the static-weight fallback.
    #[default]
    Syntree2vec,
    /// `alpha * w`: plain node2vec.
    Node2vec,
    /// `w`: a first-order walk proportional to edge weight.
    Uniform,
}

impl BiasMode {
    pub fn name(self) -> &'static str {
        match self {
            BiasMode::Syntree2vec => "syntree2vec",
            BiasMode::Node2vec => "node2vec-baseline",
            BiasMode::Uniform => "uniform-walk",
        }
    }

    fn uses_alpha(self) -> bool {
        self != BiasMode::Uniform
    }

    fn uses_tags(self) -> bool {
        self == BiasMode::Syntree2vec
    }
}

impl fmt::Display for BiasMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for BiasMode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "syntree2vec" => Ok(BiasMode::Syntree2vec),
            "node2vec" | "node2vec-baseline" => Ok(BiasMode::Node2vec),
            "uniform" | "uniform-walk" => Ok(BiasMode::Uniform),
            _ => Err(UnknownMode),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("mode must be one of syntree2vec, node2vec-baseline, uniform-walk")]
pub struct UnknownMode;

/// Row-normalized tag co-occurrence between a focus tag and a neighbor tag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TagBias {
    pub value: f64,
    /// The focus tag's row is all zero (or the tag is unknown).
    pub sparse: bool,
}

pub fn tag_bias(matrix: &TagTransitionMatrix, tag_v: &str, tag_x: &str) -> TagBias {
    match matrix.tag_index(tag_v) {
        Some(a) => row_bias(matrix, a, matrix.tag_index(tag_x)),
        None => TagBias {
            value: 0.0,
            sparse: true,
        },
    }
}

fn row_bias(matrix: &TagTransitionMatrix, a: usize, b: Option<usize>) -> TagBias {
    let sum = matrix.row_sum(a);
    if sum == 0 {
        return TagBias {
            value: 0.0,
            sparse: true,
        };
    }
    let value = b.map_or(0.0, |b| matrix.get(a, b) as f64 / sum as f64);
    TagBias {
        value,
        sparse: false,
    }
}

/// Tag bias of `v` toward each of its neighbors, after the all-zero
/// fallback: either the raw biases, or all ones when none is positive.
fn neighbor_bias(
    graph: &GiantGraph,
    matrix: &TagTransitionMatrix,
    rows: &[Option<usize>],
    v: u32,
    out: &mut Vec<f64>,
) {
    out.clear();
    match rows[v as usize] {
        Some(a) => out.extend(
            graph
                .neighbors(v)
                .iter()
                .map(|&x| row_bias(matrix, a, rows[x as usize]).value),
        ),
        None => out.resize(graph.degree(v), 0.0),
    }
    if out.iter().all(|&b| b <= 0.0) {
        out.iter_mut().for_each(|b| *b = 1.0);
    }
}

/// Unnormalized transition weight of `v -> x` given predecessor `prev`.
///
/// This is the direct per-triple computation; [`TransitionIndex`] evaluates
/// the same expression in bulk.
pub fn unnormalized_pi(
    graph: &GiantGraph,
    matrix: &TagTransitionMatrix,
    params: WalkParams,
    mode: BiasMode,
    prev: Option<u32>,
    v: u32,
    x: u32,
) -> Result<f64, TransitionError> {
    let w = graph.edge_weight(v, x).ok_or(TransitionError::NotAnEdge(v, x))?;
    if let Some(t) = prev {
        if !graph.has_edge(t, v) {
            return Err(TransitionError::NotAnEdge(t, v));
        }
    }
    let a = match prev {
        Some(t) if mode.uses_alpha() => {
            let d = if t == x {
                HopDistance::Return
            } else if graph.has_edge(t, x) {
                HopDistance::Adjacent
            } else {
                HopDistance::Away
            };
            alpha(params, d)
        }
        _ => 1.0,
    };
    let bias = if mode.uses_tags() {
        let tag_v = graph.tag(v);
        let any_positive = graph
            .neighbors(v)
            .iter()
            .any(|&y| tag_bias(matrix, tag_v, graph.tag(y)).value > 0.0);
        if any_positive {
            tag_bias(matrix, tag_v, graph.tag(x)).value
        } else {
            1.0
        }
    } else {
        1.0
    };
    Ok(a * w as f64 * bias)
}

/// Precomputed pieces shared by both index layouts.
#[derive(Debug)]
struct Model<'g> {
    graph: &'g GiantGraph,
    params: WalkParams,
    mode: BiasMode,
    /// Bias factor per arc `v -> neighbors(v)[i]`, fallback applied.
    bias: Vec<f64>,
}

impl<'g> Model<'g> {
    fn new(
        graph: &'g GiantGraph,
        matrix: &TagTransitionMatrix,
        params: WalkParams,
        mode: BiasMode,
    ) -> Self {
        let mut bias = Vec::with_capacity(graph.arc_count());
        if mode.uses_tags() {
            let rows: Vec<Option<usize>> = (0..graph.node_count() as u32)
                .map(|v| matrix.tag_index(graph.tag(v)))
                .collect();
            let mut buf = Vec::new();
            for v in 0..graph.node_count() as u32 {
                neighbor_bias(graph, matrix, &rows, v, &mut buf);
                bias.extend_from_slice(&buf);
            }
        } else {
            bias.resize(graph.arc_count(), 1.0);
        }
        Model {
            graph,
            params,
            mode,
            bias,
        }
    }

    /// Fills `out` with the weights over `neighbors(v)`.
    fn weights(&self, prev: Option<u32>, v: u32, out: &mut Vec<f64>) {
        let g = self.graph;
        let neighbors = g.neighbors(v);
        let weights = g.weights(v);
        let bias = &self.bias[g.arc_id(v, 0)..g.arc_id(v, 0) + neighbors.len()];
        out.clear();
        match prev {
            Some(t) if self.mode.uses_alpha() => {
                // Both lists are sorted; walk them in step to classify hops.
                let around_t = g.neighbors(t);
                let mut j = 0;
                for ((&x, &w), &b) in neighbors.iter().zip(weights).zip(bias) {
                    while j < around_t.len() && around_t[j] < x {
                        j += 1;
                    }
                    let d = if x == t {
                        HopDistance::Return
                    } else if j < around_t.len() && around_t[j] == x {
                        HopDistance::Adjacent
                    } else {
                        HopDistance::Away
                    };
                    out.push(alpha(self.params, d) * w as f64 * b);
                }
            }
            _ => out.extend(weights.iter().zip(bias).map(|(&w, &b)| 1.0 * w as f64 * b)),
        }
    }
}

/// Packed alias tables, one per key, laid out back to back.
#[derive(Debug, Default)]
struct Packed {
    offsets: Vec<usize>,
    columns: Vec<Column>,
}

impl Packed {
    fn get(&self, key: usize) -> AliasRef<'_> {
        let range = self.offsets[key]..self.offsets[key + 1];
        AliasRef {
            columns: &self.columns[range],
        }
    }

    fn push(&mut self, weights: &[f64], scratch: &mut alias::Scratch) -> Result<(), AliasError> {
        let start = self.columns.len();
        self.columns.resize(start + weights.len(), Column::default());
        if !weights.is_empty() {
            alias::fill(weights, &mut self.columns[start..], scratch)?;
        }
        self.offsets.push(self.columns.len());
        Ok(())
    }
}

#[derive(Debug)]
enum Tables {
    Precomputed { first: Packed, second: Packed },
    Lazy,
}

/// Per-walk buffers used by lazy sampling.
#[derive(Debug, Default)]
pub struct StepScratch {
    weights: Vec<f64>,
    columns: Vec<Column>,
    work: alias::Scratch,
}

/// Transition distributions for every first step and every ordered edge.
///
/// The precomputed layout stores `sum_v deg(v)^2` table entries; the lazy
/// layout rebuilds each table at sampling time. Both build their tables the
/// same way, so for the same random stream they produce the same walks.
#[derive(Debug)]
pub struct TransitionIndex<'g> {
    model: Model<'g>,
    tables: Tables,
}

impl<'g> TransitionIndex<'g> {
    /// Number of second-order table entries the precomputed layout needs.
    pub fn precomputed_entries(graph: &GiantGraph) -> usize {
        (0..graph.node_count() as u32)
            .map(|v| graph.degree(v) * graph.degree(v))
            .sum()
    }

    /// Builds every alias table up front.
    pub fn precompute(
        graph: &'g GiantGraph,
        matrix: &TagTransitionMatrix,
        params: WalkParams,
        mode: BiasMode,
    ) -> Result<Self, TransitionError> {
        let model = Model::new(graph, matrix, params, mode);
        let mut scratch = alias::Scratch::default();
        let mut weights = Vec::new();

        let mut first = Packed {
            offsets: vec![0],
            ..Packed::default()
        };
        for v in 0..graph.node_count() as u32 {
            model.weights(None, v, &mut weights);
            first.push(&weights, &mut scratch)?;
        }

        let entries = Self::precomputed_entries(graph);
        let mut second = Packed {
            offsets: Vec::with_capacity(graph.arc_count() + 1),
            columns: Vec::with_capacity(entries),
        };
        second.offsets.push(0);
        for t in 0..graph.node_count() as u32 {
            for &v in graph.neighbors(t) {
                model.weights(Some(t), v, &mut weights);
                second.push(&weights, &mut scratch)?;
            }
        }
        Ok(TransitionIndex {
            model,
            tables: Tables::Precomputed { first, second },
        })
    }

    /// Computes each table on demand while walking.
    pub fn lazy(
        graph: &'g GiantGraph,
        matrix: &TagTransitionMatrix,
        params: WalkParams,
        mode: BiasMode,
    ) -> Self {
        TransitionIndex {
            model: Model::new(graph, matrix, params, mode),
            tables: Tables::Lazy,
        }
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self.tables, Tables::Lazy)
    }

    pub fn graph(&self) -> &'g GiantGraph {
        self.model.graph
    }

    pub fn params(&self) -> WalkParams {
        self.model.params
    }

    pub fn mode(&self) -> BiasMode {
        self.model.mode
    }

    /// Unnormalized weights over `neighbors(v)` after arriving from `prev`.
    pub fn weights(&self, prev: Option<u32>, v: u32) -> Result<Vec<f64>, TransitionError> {
        self.check(prev, v)?;
        let mut out = Vec::new();
        self.model.weights(prev, v, &mut out);
        Ok(out)
    }

    /// The sampling distribution over `neighbors(v)` after arriving from
    /// `prev`, as encoded by the alias table actually used for sampling.
    pub fn distribution(&self, prev: Option<u32>, v: u32) -> Result<Vec<f64>, TransitionError> {
        self.check(prev, v)?;
        let g = self.model.graph;
        if g.degree(v) == 0 {
            return Err(TransitionError::Isolated(v));
        }
        match &self.tables {
            Tables::Precomputed { first, second } => Ok(match prev {
                None => first.get(v as usize).distribution(),
                Some(t) => {
                    let pos = g.neighbor_position(t, v).expect("checked edge");
                    second.get(g.arc_id(t, pos)).distribution()
                }
            }),
            Tables::Lazy => {
                let mut scratch = StepScratch::default();
                let table = self.lazy_table(prev, v, &mut scratch)?;
                Ok(table.distribution())
            }
        }
    }

    fn check(&self, prev: Option<u32>, v: u32) -> Result<(), TransitionError> {
        let g = self.model.graph;
        let n = g.node_count() as u32;
        if v >= n {
            return Err(TransitionError::NotAnEdge(prev.unwrap_or(v), v));
        }
        if let Some(t) = prev {
            if t >= n || !g.has_edge(t, v) {
                return Err(TransitionError::NotAnEdge(t, v));
            }
        }
        Ok(())
    }

    fn lazy_table<'s>(
        &self,
        prev: Option<u32>,
        v: u32,
        scratch: &'s mut StepScratch,
    ) -> Result<AliasRef<'s>, AliasError> {
        self.model.weights(prev, v, &mut scratch.weights);
        let n = scratch.weights.len();
        scratch.columns.resize(n, Column::default());
        alias::fill(&scratch.weights, &mut scratch.columns, &mut scratch.work)?;
        Ok(AliasRef {
            columns: &scratch.columns,
        })
    }

    /// Samples the first step out of `v`; returns the position in
    /// `neighbors(v)`, or `None` when `v` is isolated.
    pub fn sample_first<R: RngCore + ?Sized>(
        &self,
        v: u32,
        scratch: &mut StepScratch,
        rng: &mut R,
    ) -> Option<usize> {
        if self.model.graph.degree(v) == 0 {
            return None;
        }
        Some(match &self.tables {
            Tables::Precomputed { first, .. } => first.get(v as usize).sample(rng),
            Tables::Lazy => self
                .lazy_table(None, v, scratch)
                .expect("positive edge weights give a valid table")
                .sample(rng),
        })
    }

    /// Samples the step out of `v` after arriving from `t`, where `v` sits at
    /// position `pos` of `neighbors(t)`. Returns a position in
    /// `neighbors(v)`.
    pub fn sample_next<R: RngCore + ?Sized>(
        &self,
        t: u32,
        pos: usize,
        scratch: &mut StepScratch,
        rng: &mut R,
    ) -> usize {
        let g = self.model.graph;
        match &self.tables {
            Tables::Precomputed { second, .. } => second.get(g.arc_id(t, pos)).sample(rng),
            Tables::Lazy => {
                let v = g.neighbors(t)[pos];
                self.lazy_table(Some(t), v, scratch)
                    .expect("positive edge weights give a valid table")
                    .sample(rng)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Path a-b-c plus b-d, unit weights. a and c share tag C; row B of the
    /// tag matrix is {C: 3, D: 1}.
    pub(crate) fn fixture(with_tags: bool) -> (GiantGraph, TagTransitionMatrix) {
        let nodes = [("a", "C"), ("b", "B"), ("c", "C"), ("d", "D")]
            .iter()
            .map(|&(w, t)| (w.to_string(), t.to_string()))
            .collect();
        let g = GiantGraph::from_edges(nodes, [(0, 1, 1), (1, 2, 1), (1, 3, 1)]).unwrap();
        let tags = ["B", "C", "D"].map(String::from).to_vec();
        let counts = if with_tags {
            alloc::vec![0, 3, 1, 3, 0, 0, 1, 0, 0]
        } else {
            alloc::vec![0; 9]
        };
        (g, TagTransitionMatrix::from_counts(tags, counts).unwrap())
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn alpha_cases() {
        let unit = WalkParams::new(1.0, 1.0).unwrap();
        for d in 0..3 {
            assert_eq!(alpha(unit, HopDistance::try_from(d).unwrap()), 1.0);
        }
        let p = WalkParams::new(0.5, 1.0).unwrap();
        assert_eq!(alpha(p, HopDistance::Return), 2.0);
        let q = WalkParams::new(1.0, 4.0).unwrap();
        assert_eq!(alpha(q, HopDistance::Away), 0.25);
        assert_eq!(alpha(q, HopDistance::Adjacent), 1.0);
        assert_eq!(HopDistance::try_from(3), Err(TransitionError::InvalidHop(3)));
    }

    #[test]
    fn params_must_be_positive() {
        assert!(WalkParams::new(0.0, 1.0).is_err());
        assert!(WalkParams::new(1.0, -2.0).is_err());
        assert!(WalkParams::new(f64::NAN, 1.0).is_err());
        assert!(WalkParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn mode_names_round_trip() {
        for mode in [BiasMode::Syntree2vec, BiasMode::Node2vec, BiasMode::Uniform] {
            assert_eq!(mode.name().parse::<BiasMode>(), Ok(mode));
        }
        assert_eq!("deepwalk".parse::<BiasMode>(), Err(UnknownMode));
    }

    #[test]
    fn tag_bias_cases() {
        let tags = ["NOUN", "VERB"].map(String::from).to_vec();
        let m = TagTransitionMatrix::from_counts(tags, alloc::vec![0, 2, 2, 0]).unwrap();
        assert_eq!(
            tag_bias(&m, "NOUN", "VERB"),
            TagBias {
                value: 1.0,
                sparse: false
            }
        );
        assert_eq!(tag_bias(&m, "NOUN", "NOUN").value, 0.0);
        assert_eq!(tag_bias(&m, "NOUN", "ADJ").value, 0.0);
        assert!(tag_bias(&m, "ADJ", "NOUN").sparse);

        let zero = TagTransitionMatrix::zeros(["NOUN"]);
        assert_eq!(
            tag_bias(&zero, "NOUN", "NOUN"),
            TagBias {
                value: 0.0,
                sparse: true
            }
        );
    }

    #[test]
    fn fixture_distribution_matches_hand_computation() {
        // t=a, v=b, q=0.5: a is a return (1), c and d are two hops (2).
        // Biases C: 3/4, C: 3/4, D: 1/4 -> (0.75, 1.5, 0.5) / 2.75
        let (g, m) = fixture(true);
        let params = WalkParams::new(1.0, 0.5).unwrap();
        let pis: alloc::vec::Vec<f64> = [0, 2, 3]
            .iter()
            .map(|&x| unnormalized_pi(&g, &m, params, BiasMode::Syntree2vec, Some(0), 1, x).unwrap())
            .collect();
        assert_eq!(pis, [0.75, 1.5, 0.5]);
        let index = TransitionIndex::precompute(&g, &m, params, BiasMode::Syntree2vec).unwrap();
        let d = index.distribution(Some(0), 1).unwrap();
        assert!(close(&d, &[3.0 / 11.0, 6.0 / 11.0, 2.0 / 11.0], 1e-12), "{d:?}");
    }

    #[test]
    fn sparse_row_falls_back_to_static_weights() {
        let (g, m) = fixture(false);
        let params = WalkParams::new(1.0, 0.5).unwrap();
        let pis: alloc::vec::Vec<f64> = [0, 2, 3]
            .iter()
            .map(|&x| unnormalized_pi(&g, &m, params, BiasMode::Syntree2vec, Some(0), 1, x).unwrap())
            .collect();
        assert_eq!(pis, [1.0, 2.0, 2.0]);
        let base: alloc::vec::Vec<f64> = [0, 2, 3]
            .iter()
            .map(|&x| unnormalized_pi(&g, &m, params, BiasMode::Node2vec, Some(0), 1, x).unwrap())
            .collect();
        assert_eq!(pis, base);
    }

    #[test]
    fn partial_sparsity_zeroes_only_missing_tags() {
        // Row B only knows C, so the D neighbor gets zero weight.
        let (g, _) = fixture(true);
        let tags = ["B", "C", "D"].map(String::from).to_vec();
        let m = TagTransitionMatrix::from_counts(tags, alloc::vec![0, 1, 0, 1, 0, 0, 0, 0, 0]).unwrap();
        let index = TransitionIndex::precompute(&g, &m, WalkParams::default(), BiasMode::Syntree2vec)
            .unwrap();
        assert_eq!(index.distribution(None, 1).unwrap(), [0.5, 0.5, 0.0]);
    }

    #[test]
    fn first_step_has_no_alpha() {
        let (g, m) = fixture(true);
        let params = WalkParams::new(0.1, 10.0).unwrap();
        let index = TransitionIndex::precompute(&g, &m, params, BiasMode::Node2vec).unwrap();
        let d = index.distribution(None, 1).unwrap();
        assert!(close(&d, &[1.0 / 3.0; 3], 1e-15));
    }

    #[test]
    fn uniform_mode_ignores_alpha_and_tags() {
        let (g, m) = fixture(true);
        let params = WalkParams::new(0.1, 10.0).unwrap();
        for x in [0, 2, 3] {
            assert_eq!(
                unnormalized_pi(&g, &m, params, BiasMode::Uniform, Some(0), 1, x).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn non_edges_are_rejected() {
        let (g, m) = fixture(true);
        let p = WalkParams::default();
        assert_eq!(
            unnormalized_pi(&g, &m, p, BiasMode::Node2vec, None, 0, 2),
            Err(TransitionError::NotAnEdge(0, 2))
        );
        assert_eq!(
            unnormalized_pi(&g, &m, p, BiasMode::Node2vec, Some(2), 0, 1),
            Err(TransitionError::NotAnEdge(2, 0))
        );
        let index = TransitionIndex::precompute(&g, &m, p, BiasMode::Node2vec).unwrap();
        assert!(index.distribution(Some(2), 0).is_err());
    }

    #[test]
    fn two_node_graph_is_forced() {
        let nodes = ["a", "b"].map(|w| (w.to_string(), "X".to_string())).to_vec();
        let g = GiantGraph::from_edges(nodes, [(0, 1, 5)]).unwrap();
        let m = TagTransitionMatrix::zeros(["X"]);
        let index = TransitionIndex::precompute(&g, &m, WalkParams::default(), BiasMode::Syntree2vec)
            .unwrap();
        assert_eq!(index.distribution(Some(0), 1).unwrap(), [1.0]);
        assert_eq!(index.distribution(Some(1), 0).unwrap(), [1.0]);
        assert_eq!(index.distribution(None, 0).unwrap(), [1.0]);
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: u32) -> (GiantGraph, TagTransitionMatrix) {
        let tags = ["A", "B", "C"];
        let nodes = (0..n)
            .map(|i| (alloc::format!("w{i}"), tags[rng.random_range(0..3)].to_string()))
            .collect();
        let mut edges = alloc::vec::Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.3) {
                    edges.push((u, v, rng.random_range(1..5)));
                }
            }
        }
        let g = GiantGraph::from_edges(nodes, edges).unwrap();
        let mut m = TagTransitionMatrix::zeros(tags);
        for _ in 0..rng.random_range(0..6) {
            m.add_arc(rng.random_range(0..3), rng.random_range(0..3));
        }
        (g, m)
    }

    #[test]
    fn lazy_and_precomputed_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (g, m) = random_graph(&mut rng, 12);
            let params = WalkParams::new(0.7, 2.5).unwrap();
            let eager = TransitionIndex::precompute(&g, &m, params, BiasMode::Syntree2vec).unwrap();
            let lazy = TransitionIndex::lazy(&g, &m, params, BiasMode::Syntree2vec);
            let mut s1 = StepScratch::default();
            let mut s2 = StepScratch::default();
            for t in 0..g.node_count() as u32 {
                for (pos, &v) in g.neighbors(t).iter().enumerate() {
                    let d = eager.distribution(Some(t), v).unwrap();
                    assert_eq!(d, lazy.distribution(Some(t), v).unwrap());
                    assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                    let seed = rng.random();
                    let mut r1 = ChaCha8Rng::seed_from_u64(seed);
                    let mut r2 = ChaCha8Rng::seed_from_u64(seed);
                    for _ in 0..10 {
                        assert_eq!(
                            eager.sample_next(t, pos, &mut s1, &mut r1),
                            lazy.sample_next(t, pos, &mut s2, &mut r2)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn index_matches_unnormalized_pi() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for mode in [BiasMode::Syntree2vec, BiasMode::Node2vec, BiasMode::Uniform] {
            let (g, m) = random_graph(&mut rng, 10);
            let params = WalkParams::new(2.0, 0.25).unwrap();
            let index = TransitionIndex::precompute(&g, &m, params, mode).unwrap();
            for t in 0..g.node_count() as u32 {
                for &v in g.neighbors(t) {
                    let pis: alloc::vec::Vec<f64> = g
                        .neighbors(v)
                        .iter()
                        .map(|&x| unnormalized_pi(&g, &m, params, mode, Some(t), v, x).unwrap())
                        .collect();
                    assert_eq!(pis, index.weights(Some(t), v).unwrap());
                    let total: f64 = pis.iter().sum();
                    assert!(total > 0.0);
                    let expected: alloc::vec::Vec<f64> = pis.iter().map(|p| p / total).collect();
                    assert!(close(&index.distribution(Some(t), v).unwrap(), &expected, 1e-9));
                }
            }
        }
    }

    #[test]
    fn reduces_to_first_order_with_unit_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let (g, _) = random_graph(&mut rng, 15);
        let tags = ["A", "B", "C"];
        let uniform = TagTransitionMatrix::from_counts(
            tags.map(String::from).to_vec(),
            alloc::vec![1; 9],
        )
        .unwrap();
        let index =
            TransitionIndex::precompute(&g, &uniform, WalkParams::default(), BiasMode::Syntree2vec)
                .unwrap();
        for t in 0..g.node_count() as u32 {
            for &v in g.neighbors(t) {
                let w = g.weights(v);
                let total: u64 = w.iter().sum();
                let expected: alloc::vec::Vec<f64> =
                    w.iter().map(|&x| x as f64 / total as f64).collect();
                assert!(close(&index.distribution(Some(t), v).unwrap(), &expected, 1e-9));
            }
        }
    }
}
