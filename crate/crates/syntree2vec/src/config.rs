//! One flat TOML document holding every pipeline setting.
//!
//! ```toml
//! mode = "syntree2vec"
//! p = 1.0
//! q = 0.5
//! walk_seed = 7
//! ```
//!
//! Missing keys take their defaults; unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use syntree2vec_core::{BiasMode, ParseConfig, TrainConfig, WalkConfig, WalkParams};

use crate::error::{Error, Result};

/// How the walker stores its alias tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TableLayout {
    /// Precompute unless the tables would exceed 50M entries.
    #[default]
    Auto,
    Precomputed,
    Lazy,
}

pub const AUTO_TABLE_LIMIT: usize = 50_000_000;

mod mode_serde {
    use super::BiasMode;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(mode: &BiasMode, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(mode.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BiasMode, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|_| D::Error::custom(format!("unknown mode {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    // ingest
    pub case_fold: bool,
    pub drop_punct: bool,
    pub min_count: u64,
    // walk
    #[serde(with = "mode_serde")]
    pub mode: BiasMode,
    pub p: f64,
    pub q: f64,
    pub walks_per_node: usize,
    pub walk_length: usize,
    pub walk_seed: u64,
    pub tables: TableLayout,
    // train
    pub window: usize,
    pub dim: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub negatives: usize,
    pub noise_exponent: f64,
    pub subsample: Option<f64>,
    pub train_seed: u64,
    /// Worker threads for walking and training; 1 is deterministic, 0 means
    /// one per core.
    pub threads: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let parse = ParseConfig::default();
        let walk = WalkConfig::default();
        let train = TrainConfig::default();
        let params = WalkParams::default();
        PipelineConfig {
            case_fold: parse.case_fold,
            drop_punct: parse.drop_punct,
            min_count: 1,
            mode: BiasMode::default(),
            p: params.p(),
            q: params.q(),
            walks_per_node: walk.walks_per_node(),
            walk_length: walk.walk_length(),
            walk_seed: walk.seed(),
            tables: TableLayout::Auto,
            window: train.window,
            dim: train.dim,
            epochs: train.epochs,
            learning_rate: train.learning_rate,
            negatives: train.negatives,
            noise_exponent: train.noise_exponent,
            subsample: train.subsample,
            train_seed: train.seed,
            threads: 1,
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.message().to_string())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(Error::io(path))?;
        Self::from_toml(&text).map_err(|message| Error::Config {
            path: path.to_owned(),
            message,
        })
    }

    /// Every field, one `key = value` line each.
    pub fn to_document(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn parse_config(&self) -> ParseConfig {
        ParseConfig {
            case_fold: self.case_fold,
            drop_punct: self.drop_punct,
        }
    }

    pub fn walk_params(&self) -> Result<WalkParams> {
        WalkParams::new(self.p, self.q).map_err(|e| Error::Usage(e.to_string()))
    }

    pub fn walk_config(&self) -> Result<WalkConfig> {
        WalkConfig::new(self.walks_per_node, self.walk_length, self.walk_seed)
            .map_err(|e| Error::Usage(e.to_string()))
    }

    pub fn train_config(&self) -> Result<TrainConfig> {
        let config = TrainConfig {
            window: self.window,
            dim: self.dim,
            epochs: self.epochs,
            learning_rate: self.learning_rate,
            negatives: self.negatives,
            noise_exponent: self.noise_exponent,
            subsample: self.subsample,
            seed: self.train_seed,
        };
        config.validate().map_err(|e| Error::Usage(e.to_string()))?;
        Ok(config)
    }

    /// `threads` with 0 resolved to the core count.
    pub fn thread_count(&self) -> usize {
        match self.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        }
    }
}
