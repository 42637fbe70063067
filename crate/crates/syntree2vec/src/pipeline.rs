//! The subcommands as library functions. `main` only parses arguments and
//! prints.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use syntree2vec_core::conllu::{build_vocab, parse_conllu};
use syntree2vec_core::sgns::EpochReport;
use syntree2vec_core::{build_giant_graph, GiantGraph, TagTransitionMatrix, TransitionIndex};

use crate::config::{PipelineConfig, TableLayout, AUTO_TABLE_LIMIT};
use crate::embeddings::{load_embeddings, save_embeddings, WordVectors};
use crate::error::{Error, Result};
use crate::graph_file::{export_graph, import_graph};
use crate::parallel::{generate_walks_parallel, train_parallel};
use crate::stats::StatsReport;
use crate::text::escape;
use crate::walks_file::{parse_walks, parse_walks_with, save_walks};

/// Parses the corpus files in order and writes the graph file to `out`.
pub fn cmd_build(inputs: &[PathBuf], out: &Path, config: &PipelineConfig) -> Result<StatsReport> {
    let mut trees = Vec::new();
    for path in inputs {
        let text = std::fs::read_to_string(path).map_err(Error::io(path))?;
        let parsed = parse_conllu(&text, config.parse_config()).map_err(|source| Error::Conllu {
            path: path.clone(),
            source,
        })?;
        trees.extend(parsed);
    }
    if trees.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let vocab = build_vocab(&trees, config.min_count).map_err(Error::Ingest)?;
    let (graph, matrix, report) = build_giant_graph(&trees, &vocab);
    export_graph(out, &graph, &matrix)?;
    Ok(StatsReport::new(&graph, &matrix, Some(&report)))
}

pub fn cmd_stats(graph: &Path) -> Result<StatsReport> {
    let (graph, matrix) = import_graph(graph)?;
    Ok(StatsReport::new(&graph, &matrix, None))
}

/// The alias-table layout `config` asks for on this graph.
pub fn transition_index<'g>(
    graph: &'g GiantGraph,
    matrix: &TagTransitionMatrix,
    config: &PipelineConfig,
) -> Result<TransitionIndex<'g>> {
    let params = config.walk_params()?;
    let lazy = match config.tables {
        TableLayout::Lazy => true,
        TableLayout::Precomputed => false,
        TableLayout::Auto => TransitionIndex::precomputed_entries(graph) > AUTO_TABLE_LIMIT,
    };
    Ok(if lazy {
        TransitionIndex::lazy(graph, matrix, params, config.mode)
    } else {
        TransitionIndex::precompute(graph, matrix, params, config.mode)?
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkSummary {
    pub walks: usize,
    pub nodes: usize,
    pub lazy: bool,
}

/// Writes `walks_per_node × |V|` walks to `out`. With `dump`, also writes
/// every transition distribution (see [`transition_dump`]).
pub fn cmd_walk(
    graph: &Path,
    out: &Path,
    config: &PipelineConfig,
    dump: Option<&Path>,
) -> Result<WalkSummary> {
    let walk_config = config.walk_config()?;
    config.walk_params()?;
    let (graph, matrix) = import_graph(graph)?;
    let index = transition_index(&graph, &matrix, config)?;
    let walks = generate_walks_parallel(&index, &walk_config, config.thread_count())?;
    save_walks(out, &graph, &walks)?;
    if let Some(path) = dump {
        std::fs::write(path, transition_dump(&index)?).map_err(Error::io(path))?;
    }
    Ok(WalkSummary {
        walks: walks.len(),
        nodes: graph.node_count(),
        lazy: index.is_lazy(),
    })
}

/// Every normalized transition distribution, one per line:
///
/// ```text
/// first <v> <x>:<prob> ...        first step from v
/// step <t> <v> <x>:<prob> ...     arrived at v from t
/// ```
///
/// Nodes are graph indices; probabilities print with round-trip precision.
/// Isolated nodes have no line.
pub fn transition_dump(index: &TransitionIndex<'_>) -> Result<String> {
    let graph = index.graph();
    let mut out = String::new();
    let mut line = |prefix: String, v: u32, probs: Vec<f64>| {
        out.push_str(&prefix);
        for (&x, p) in graph.neighbors(v).iter().zip(probs) {
            write!(out, " {x}:{p:?}").unwrap();
        }
        out.push('\n');
    };
    for v in 0..graph.node_count() as u32 {
        if graph.degree(v) > 0 {
            line(format!("first {v}"), v, index.distribution(None, v)?);
        }
    }
    for t in 0..graph.node_count() as u32 {
        for &v in graph.neighbors(t) {
            line(format!("step {t} {v}"), v, index.distribution(Some(t), v)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrainSummary {
    pub walks: usize,
    pub vocab_size: usize,
    pub dim: usize,
}

/// Trains on the walk file and writes word2vec text to `out`.
///
/// With `graph`, the vocabulary and its order come from the graph file and
/// every walk word must be in it. Otherwise the vocabulary is derived from
/// the walks, by descending frequency.
pub fn cmd_train(
    walks: &Path,
    out: &Path,
    config: &PipelineConfig,
    graph: Option<&Path>,
    on_epoch: impl FnMut(&EpochReport),
) -> Result<TrainSummary> {
    let train_config = config.train_config()?;
    let text = std::fs::read_to_string(walks).map_err(Error::io(walks))?;
    let walk_error = |source| Error::WalkFile {
        path: walks.to_owned(),
        source,
    };
    let (words, corpus) = match graph {
        Some(g) => {
            let (graph, _) = import_graph(g)?;
            let corpus = parse_walks_with(&text, |w| graph.node_of(w)).map_err(walk_error)?;
            (graph.words().to_vec(), corpus)
        }
        None => {
            let (vocab, corpus) = parse_walks(&text).map_err(walk_error)?;
            (vocab.words().to_vec(), corpus)
        }
    };
    let matrix = train_parallel(&corpus, words.len(), &train_config, config.thread_count(), on_epoch)?;
    let vectors = WordVectors::from_embeddings(&words, &matrix).expect("one row per word");
    save_embeddings(out, &vectors)?;
    Ok(TrainSummary {
        walks: corpus.len(),
        vocab_size: words.len(),
        dim: train_config.dim,
    })
}

/// The `top_n` nearest words to `word` by cosine similarity.
pub fn cmd_query(embeddings: &Path, word: &str, top_n: usize) -> Result<Vec<(String, f64)>> {
    let vectors = load_embeddings(embeddings)?;
    Ok(vectors
        .nearest(word, top_n)?
        .into_iter()
        .map(|(w, s)| (w.to_string(), s))
        .collect())
}

/// `word similarity` lines, similarity to 6 decimals.
pub fn format_neighbours(neighbours: &[(String, f64)]) -> String {
    let mut out = String::new();
    for (w, s) in neighbours {
        writeln!(out, "{} {s:.6}", escape(w)).unwrap();
    }
    out
}
