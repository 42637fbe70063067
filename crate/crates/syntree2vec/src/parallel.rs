//! Multi-threaded walk generation and training.
//!
//! Walks are reproducible at any thread count because every walk owns its
//! random stream. Training with more than one thread is Hogwild-style:
//! workers update shared rows without locks, so results vary run to run and
//! are only statistically equivalent to the single-threaded trainer.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use syntree2vec_core::rng;
use syntree2vec_core::sgns::{
    self, init_embeddings, prepare_corpus, EpochReport, LossTally, NoiseDistribution, PairScratch,
    ParamStore, Schedule,
};
use syntree2vec_core::transition::StepScratch;
use syntree2vec_core::walker::walk_for;
use syntree2vec_core::{generate_walks, EmbeddingMatrix, TrainConfig, TrainError, TransitionIndex, Walk, WalkConfig};

use crate::error::{Error, Result};

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))
}

/// Same walks, in the same order, as [`generate_walks`].
pub fn generate_walks_parallel(
    index: &TransitionIndex<'_>,
    config: &WalkConfig,
    threads: usize,
) -> Result<Vec<Walk>> {
    if threads <= 1 {
        return Ok(generate_walks(index, config));
    }
    let n = index.graph().node_count();
    let total = config.walks_per_node() * n;
    Ok(pool(threads)?.install(|| {
        (0..total)
            .into_par_iter()
            .map_init(StepScratch::default, |scratch, k| {
                walk_for(index, config, k / n, (k % n) as u32, scratch)
            })
            .collect()
    }))
}

/// Parameters as `f64` bit patterns, readable and writable from any thread.
#[derive(Debug)]
struct AtomicParams {
    dim: usize,
    input: Vec<AtomicU64>,
    output: Vec<AtomicU64>,
}

impl AtomicParams {
    fn new(m: EmbeddingMatrix) -> Self {
        let dim = m.dim();
        let (input, output) = m.into_parts();
        let wrap = |v: Vec<f64>| v.into_iter().map(|x| AtomicU64::new(x.to_bits())).collect();
        AtomicParams {
            dim,
            input: wrap(input),
            output: wrap(output),
        }
    }

    fn into_matrix(self) -> EmbeddingMatrix {
        let unwrap = |v: Vec<AtomicU64>| -> Vec<f64> {
            v.into_iter().map(|x| f64::from_bits(x.into_inner())).collect()
        };
        let vocab_size = self.input.len() / self.dim.max(1);
        EmbeddingMatrix::from_parts(vocab_size, self.dim, unwrap(self.input), unwrap(self.output))
            .expect("shape preserved")
    }
}

fn read(row: &[AtomicU64], out: &mut [f64]) {
    for (o, x) in out.iter_mut().zip(row) {
        *o = f64::from_bits(x.load(Ordering::Relaxed));
    }
}

// Racy read-modify-write; lost updates are tolerated as in Hogwild.
fn add(row: &[AtomicU64], scale: f64, delta: &[f64]) {
    for (x, g) in row.iter().zip(delta) {
        let v = f64::from_bits(x.load(Ordering::Relaxed)) + scale * g;
        x.store(v.to_bits(), Ordering::Relaxed);
    }
}

/// A worker's handle on the shared parameters.
struct Shared<'a>(&'a AtomicParams);

impl Shared<'_> {
    fn row<'s>(&self, v: &'s [AtomicU64], row: u32) -> &'s [AtomicU64] {
        let d = self.0.dim;
        &v[row as usize * d..(row as usize + 1) * d]
    }
}

impl ParamStore for Shared<'_> {
    fn dim(&self) -> usize {
        self.0.dim
    }

    fn read_input(&self, row: u32, out: &mut [f64]) {
        read(self.row(&self.0.input, row), out)
    }

    fn read_output(&self, row: u32, out: &mut [f64]) {
        read(self.row(&self.0.output, row), out)
    }

    fn add_input(&mut self, row: u32, scale: f64, delta: &[f64]) {
        add(self.row(&self.0.input, row), scale, delta)
    }

    fn add_output(&mut self, row: u32, scale: f64, delta: &[f64]) {
        add(self.row(&self.0.output, row), scale, delta)
    }
}

/// Trains on `threads` workers. One thread defers to the deterministic
/// single-threaded trainer.
pub fn train_parallel<W: AsRef<[u32]> + Sync>(
    walks: &[W],
    vocab_size: usize,
    config: &TrainConfig,
    threads: usize,
    mut on_epoch: impl FnMut(&EpochReport),
) -> Result<EmbeddingMatrix> {
    if threads <= 1 {
        return Ok(sgns::train_with_progress(walks, vocab_size, config, on_epoch)?);
    }
    let (counts, pairs) = prepare_corpus(walks, vocab_size, config)?;
    let noise = NoiseDistribution::new(&counts, config.noise_exponent).map_err(TrainError::from)?;
    let per_epoch: u64 = pairs.iter().sum();
    let mut offsets = Vec::with_capacity(pairs.len());
    let mut acc = 0;
    for &p in &pairs {
        offsets.push(acc);
        acc += p;
    }
    let schedule = Schedule::new(config, &noise, &counts, per_epoch);
    let params = AtomicParams::new(init_embeddings(vocab_size, config.dim, config.seed));
    let pool = pool(threads)?;

    for epoch in 0..config.epochs {
        let base = epoch as u64 * per_epoch;
        let tally = pool.install(|| {
            walks
                .par_iter()
                .enumerate()
                .map_init(PairScratch::default, |scratch, (i, walk)| {
                    let mut rng = rng::stream(config.seed, &[epoch as u64, i as u64]);
                    let mut store = Shared(&params);
                    schedule.train_walk(&mut store, walk.as_ref(), base + offsets[i], &mut rng, scratch)
                })
                .try_reduce(LossTally::default, |mut a, b| {
                    a.add(b);
                    Ok(a)
                })
        })?;
        on_epoch(&EpochReport {
            epoch,
            pairs: tally.pairs,
            mean_loss: tally.mean(),
            learning_rate: schedule.learning_rate(base + per_epoch),
        });
    }
    Ok(params.into_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use syntree2vec_core::{BiasMode, GiantGraph, TagTransitionMatrix, WalkParams};

    fn ring(n: u32) -> GiantGraph {
        let nodes = (0..n).map(|i| (format!("w{i}"), "X".to_string())).collect();
        GiantGraph::from_edges(nodes, (0..n).map(|i| (i, (i + 1) % n, 1 + (i % 3) as u64))).unwrap()
    }

    #[test]
    fn parallel_walks_equal_sequential() {
        let g = ring(30);
        let m = TagTransitionMatrix::zeros(["X"]);
        let params = WalkParams::new(0.5, 2.0).unwrap();
        let index = TransitionIndex::precompute(&g, &m, params, BiasMode::Node2vec).unwrap();
        let config = WalkConfig::new(3, 12, 9).unwrap();
        let seq = generate_walks(&index, &config);
        for threads in [2, 4] {
            assert_eq!(generate_walks_parallel(&index, &config, threads).unwrap(), seq);
        }
    }

    #[test]
    fn hogwild_training_learns() {
        let g = ring(12);
        let m = TagTransitionMatrix::zeros(["X"]);
        let index = TransitionIndex::precompute(&g, &m, WalkParams::default(), BiasMode::Uniform).unwrap();
        let walks = generate_walks(&index, &WalkConfig::new(10, 20, 3).unwrap());
        let config = TrainConfig {
            dim: 16,
            epochs: 3,
            ..TrainConfig::default()
        };
        let mut losses = Vec::new();
        let emb = train_parallel(&walks, 12, &config, 4, |r| losses.push(r.mean_loss)).unwrap();
        assert_eq!(losses.len(), 3);
        assert!(losses[2] < losses[0]);
        assert!(emb.input().iter().all(|x| x.is_finite()));
        let one = train_parallel(&walks, 12, &config, 1, |_| {}).unwrap();
        assert_eq!(one, sgns::train(&walks, 12, &config).unwrap());
    }
}
