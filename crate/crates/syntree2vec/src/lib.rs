//! Files, parallel drivers and the command-line pipeline around
//! [`syntree2vec_core`].
//!
//! The pipeline runs in stages that communicate through files:
//!
//! | stage   | reads                 | writes                         |
//! |---------|-----------------------|--------------------------------|
//! | `build` | CoNLL-U               | graph file ([`graph_file`])    |
//! | `walk`  | graph file            | walk corpus ([`walks_file`])   |
//! | `train` | walk corpus           | word2vec text ([`embeddings`]) |
//! | `query` | word2vec text         | nearest neighbours on stdout   |

pub use syntree2vec_core as core;

pub mod config;
pub mod embeddings;
pub mod error;
pub mod graph_file;
pub mod parallel;
pub mod pipeline;
pub mod stats;
pub mod text;
pub mod walks_file;

pub use config::{PipelineConfig, TableLayout};
pub use error::{Error, ExitCode};
