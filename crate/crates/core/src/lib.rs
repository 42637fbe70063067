//! Word embeddings learned from a graph of concatenated dependency parse trees.
//!
//! The pipeline is:
//!
//! 1. [`conllu`] parses CoNLL-U sentences and builds a [`conllu::Vocabulary`].
//! 2. [`graph`] merges every parse tree on shared word types into one weighted
//!    [`graph::GiantGraph`] and counts POS tag pairs over dependency arcs in a
//!    [`graph::TagTransitionMatrix`].
//! 3. [`transition`] turns the graph, the tag matrix, and the return/in-out
//!    parameters into second-order transition tables backed by [`alias`] tables.
//! 4. [`walker`] samples the walk corpus.
//! 5. [`sgns`] trains skip-gram with negative sampling over the walks.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command line
//! driver and the multi-threaded paths live in the `syntree2vec` crate.
#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod alias;
pub mod conllu;
pub mod graph;
pub mod rng;
pub mod sgns;
pub mod transition;
pub mod walker;

pub use alias::{AliasError, AliasTable, Column};
pub use conllu::{
    build_vocab, parse_conllu, IngestError, ParseConfig, SentenceTree, Token, Vocabulary,
};
pub use graph::{build_giant_graph, BuildReport, GiantGraph, GraphStats, TagTransitionMatrix};
pub use sgns::{train, EmbeddingMatrix, TrainConfig, TrainError};
pub use transition::{BiasMode, HopDistance, TransitionIndex, WalkParams};
pub use walker::{generate_walks, syntree2vec_walk, Walk, WalkConfig};
