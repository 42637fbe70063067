//! Graph summaries printed by `build` and `stats`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use syntree2vec_core::graph::graph_stats;
use syntree2vec_core::{BuildReport, GiantGraph, TagTransitionMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcReport {
    pub counted: u64,
    pub self_arcs: u64,
    pub oov: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub nodes: usize,
    pub edges: usize,
    pub total_weight: u64,
    pub isolated: usize,
    pub tags: usize,
    pub matrix_total: u64,
    pub degree_histogram: BTreeMap<usize, usize>,
    /// Only known right after a build.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arcs: Option<ArcReport>,
}

impl StatsReport {
    pub fn new(graph: &GiantGraph, matrix: &TagTransitionMatrix, build: Option<&BuildReport>) -> Self {
        let s = graph_stats(graph);
        StatsReport {
            nodes: s.nodes,
            edges: s.edges,
            total_weight: s.total_weight,
            isolated: s.isolated,
            tags: matrix.len(),
            matrix_total: matrix.total(),
            degree_histogram: s.degree_histogram,
            arcs: build.map(|b| ArcReport {
                counted: b.counted_arcs,
                self_arcs: b.self_arcs,
                oov: b.oov_arcs,
            }),
        }
    }

    /// The same report without the build-only fields.
    pub fn graph_only(&self) -> Self {
        StatsReport {
            arcs: None,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes: {}", self.nodes)?;
        writeln!(f, "edges: {}", self.edges)?;
        writeln!(f, "total_weight: {}", self.total_weight)?;
        writeln!(f, "isolated: {}", self.isolated)?;
        writeln!(f, "tags: {}", self.tags)?;
        writeln!(f, "matrix_total: {}", self.matrix_total)?;
        if let Some(a) = &self.arcs {
            writeln!(f, "arcs_counted: {}", a.counted)?;
            writeln!(f, "arcs_self: {}", a.self_arcs)?;
            writeln!(f, "arcs_oov: {}", a.oov)?;
        }
        let hist: Vec<String> = self
            .degree_histogram
            .iter()
            .map(|(d, n)| format!("{d}:{n}"))
            .collect();
        writeln!(f, "degree_histogram: {}", hist.join(" "))
    }
}
