//! Skip-gram with negative sampling over a walk corpus.
//!
//! For a center word `c` with input vector `u`, a context word with output
//! vector `v` and sampled noise words with output vectors `v_1..v_k`, the
//! per-pair loss is
//!
//! ```text
//! L = -log s(u.v) - sum_i log s(-u.v_i)
//! ```
//!
//! with `s` the logistic function. Training runs plain SGD on this loss with
//! a learning rate decaying linearly to `1e-4` of its initial value.

use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

use crate::alias::{AliasError, AliasTable};
use crate::rng;

/// Final learning rate as a fraction of the initial one.
pub const MIN_LR_FRACTION: f64 = 1e-4;

const INIT_STREAM: u64 = u64::MAX;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TrainError {
    #[error("invalid training config: {0}")]
    InvalidConfig(&'static str),
    #[error("the walk corpus is empty")]
    EmptyCorpus,
    #[error("the walk corpus has no (center, context) pairs; every walk has length 1")]
    NoPairs,
    #[error("walk node {node} is outside the vocabulary of {vocab_size} words")]
    UnknownNode { node: u32, vocab_size: usize },
    #[error("non-finite loss for pair (center {center}, context {context})")]
    NonFinite { center: u32, context: u32 },
    #[error("noise distribution: {0}")]
    Noise(#[from] AliasError),
}

/// Skip-gram hyper-parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrainConfig {
    /// Context positions on each side of the center.
    pub window: usize,
    pub dim: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    /// Noise words per positive pair.
    pub negatives: usize,
    /// Exponent applied to corpus counts to form the noise distribution.
    pub noise_exponent: f64,
    /// Frequent-word subsampling threshold; `None` keeps every token.
    pub subsample: Option<f64>,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            window: 5,
            dim: 100,
            epochs: 5,
            learning_rate: 0.025,
            negatives: 5,
            noise_exponent: 0.75,
            subsample: None,
            seed: 1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TrainError> {
        let bad = |msg| Err(TrainError::InvalidConfig(msg));
        if self.window == 0 {
            return bad("window must be at least 1");
        }
        if self.dim == 0 {
            return bad("dim must be at least 1");
        }
        if self.epochs == 0 {
            return bad("epochs must be at least 1");
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return bad("learning rate must be positive");
        }
        if self.negatives == 0 {
            return bad("negatives must be at least 1");
        }
        if !self.noise_exponent.is_finite() {
            return bad("noise exponent must be finite");
        }
        if let Some(t) = self.subsample {
            if !(t.is_finite() && t > 0.0) {
                return bad("subsampling threshold must be positive");
            }
        }
        Ok(())
    }
}

/// Input and output vectors, `V x d` each, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingMatrix {
    vocab_size: usize,
    dim: usize,
    input: Vec<f64>,
    output: Vec<f64>,
}

impl EmbeddingMatrix {
    pub fn from_parts(
        vocab_size: usize,
        dim: usize,
        input: Vec<f64>,
        output: Vec<f64>,
    ) -> Option<Self> {
        (input.len() == vocab_size * dim && output.len() == vocab_size * dim).then_some(
            EmbeddingMatrix {
                vocab_size,
                dim,
                input,
                output,
            },
        )
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The embedding of a word.
    pub fn input_row(&self, i: u32) -> &[f64] {
        let i = i as usize;
        &self.input[i * self.dim..(i + 1) * self.dim]
    }

    pub fn output_row(&self, i: u32) -> &[f64] {
        let i = i as usize;
        &self.output[i * self.dim..(i + 1) * self.dim]
    }

    pub fn input(&self) -> &[f64] {
        &self.input
    }

    pub fn output(&self) -> &[f64] {
        &self.output
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.input, self.output)
    }
}

/// Input rows uniform in `[-0.5/d, 0.5/d)`, output rows zero.
pub fn init_embeddings(vocab_size: usize, dim: usize, seed: u64) -> EmbeddingMatrix {
    let mut rng = rng::stream(seed, &[INIT_STREAM]);
    let input = (0..vocab_size * dim)
        .map(|_| (rng::unit_f64(rng.next_u64()) - 0.5) / dim as f64)
        .collect();
    EmbeddingMatrix {
        vocab_size,
        dim,
        input,
        output: vec![0.0; vocab_size * dim],
    }
}

#[inline]
fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + libm::exp(-x))
    } else {
        let e = libm::exp(x);
        e / (1.0 + e)
    }
}

/// `log(1 + e^x)`, i.e. `-log s(-x)`.
#[inline]
fn softplus(x: f64) -> f64 {
    x.max(0.0) + libm::log1p(libm::exp(-x.abs()))
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Loss of one positive pair plus its negatives, and the loss gradients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PairGradients {
    pub loss: f64,
    pub center: Vec<f64>,
    pub context: Vec<f64>,
    /// Row-major, one row per negative.
    pub negatives: Vec<f64>,
}

impl PairGradients {
    pub fn negative(&self, i: usize) -> &[f64] {
        let d = self.center.len();
        &self.negatives[i * d..(i + 1) * d]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("non-finite loss")]
pub struct NonFiniteLoss;

/// Computes the SGNS loss and its exact partial derivatives.
pub fn pair_loss_and_grads(
    center: &[f64],
    context: &[f64],
    negatives: &[&[f64]],
) -> Result<PairGradients, NonFiniteLoss> {
    let flat: Vec<f64> = negatives.iter().flat_map(|r| r.iter().copied()).collect();
    let mut grads = PairGradients::default();
    pair_loss_and_grads_into(center, context, &flat, &mut grads)?;
    Ok(grads)
}

/// As [`pair_loss_and_grads`], with the negative rows packed back to back
/// in `negatives` and the result written into `grads`.
pub fn pair_loss_and_grads_into(
    center: &[f64],
    context: &[f64],
    negatives: &[f64],
    grads: &mut PairGradients,
) -> Result<(), NonFiniteLoss> {
    let d = center.len();
    debug_assert_eq!(context.len(), d);
    debug_assert_eq!(negatives.len() % d.max(1), 0);

    grads.center.clear();
    grads.center.resize(d, 0.0);
    grads.context.clear();
    grads.negatives.clear();

    // dL/ds = s(s) - 1 for the positive score, s(s) for each negative.
    let score = dot(center, context);
    let mut loss = softplus(-score);
    let g = sigmoid(score) - 1.0;
    grads.context.extend(center.iter().map(|u| g * u));
    for (gc, v) in grads.center.iter_mut().zip(context) {
        *gc += g * v;
    }
    if d > 0 {
        for row in negatives.chunks_exact(d) {
            let score = dot(center, row);
            loss += softplus(score);
            let g = sigmoid(score);
            grads.negatives.extend(center.iter().map(|u| g * u));
            for (gc, v) in grads.center.iter_mut().zip(row) {
                *gc += g * v;
            }
        }
    }
    grads.loss = loss;
    if loss.is_finite() {
        Ok(())
    } else {
        Err(NonFiniteLoss)
    }
}

/// Noise distribution `count^exponent` over the vocabulary.
#[derive(Clone, Debug)]
pub struct NoiseDistribution {
    table: AliasTable,
}

impl NoiseDistribution {
    pub fn new(counts: &[u64], exponent: f64) -> Result<Self, AliasError> {
        let weights: Vec<f64> = counts
            .iter()
            .map(|&c| if c == 0 { 0.0 } else { libm::pow(c as f64, exponent) })
            .collect();
        Ok(NoiseDistribution {
            table: AliasTable::new(&weights)?,
        })
    }

    #[inline]
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> u32 {
        self.table.sample(rng) as u32
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.table.distribution()
    }
}

/// Number of `(center, context)` pairs in a walk of `len` nodes with
/// `window` context positions on each side.
pub fn window_pair_count(len: usize, window: usize) -> u64 {
    (0..len)
        .map(|n| ((n + window).min(len - 1) - n.saturating_sub(window)) as u64)
        .sum()
}

/// The `(center, context)` position pairs of a walk, center-major.
pub fn window_pairs(len: usize, window: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..len).flat_map(move |n| {
        let hi = (n + window).min(len.saturating_sub(1));
        (n.saturating_sub(window)..=hi)
            .filter(move |&j| j != n)
            .map(move |j| (n, j))
    })
}

/// Word occurrence counts over a walk corpus.
pub fn corpus_counts<W: AsRef<[u32]>>(walks: &[W], vocab_size: usize) -> Result<Vec<u64>, TrainError> {
    let mut counts = vec![0u64; vocab_size];
    for walk in walks {
        for &node in walk.as_ref() {
            *counts
                .get_mut(node as usize)
                .ok_or(TrainError::UnknownNode { node, vocab_size })? += 1;
        }
    }
    Ok(counts)
}

/// Row access to the parameters being trained.
///
/// The single-threaded trainer uses [`EmbeddingMatrix`]; other stores can
/// share rows across threads.
pub trait ParamStore {
    fn dim(&self) -> usize;
    fn read_input(&self, row: u32, out: &mut [f64]);
    fn read_output(&self, row: u32, out: &mut [f64]);
    /// `input[row] += scale * delta`
    fn add_input(&mut self, row: u32, scale: f64, delta: &[f64]);
    /// `output[row] += scale * delta`
    fn add_output(&mut self, row: u32, scale: f64, delta: &[f64]);
}

impl ParamStore for EmbeddingMatrix {
    fn dim(&self) -> usize {
        self.dim
    }

    fn read_input(&self, row: u32, out: &mut [f64]) {
        out.copy_from_slice(self.input_row(row));
    }

    fn read_output(&self, row: u32, out: &mut [f64]) {
        out.copy_from_slice(self.output_row(row));
    }

    fn add_input(&mut self, row: u32, scale: f64, delta: &[f64]) {
        let r = row as usize * self.dim;
        for (x, g) in self.input[r..r + self.dim].iter_mut().zip(delta) {
            *x += scale * g;
        }
    }

    fn add_output(&mut self, row: u32, scale: f64, delta: &[f64]) {
        let r = row as usize * self.dim;
        for (x, g) in self.output[r..r + self.dim].iter_mut().zip(delta) {
            *x += scale * g;
        }
    }
}

/// Loss totals of a stretch of training.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LossTally {
    pub pairs: u64,
    pub loss: f64,
}

impl LossTally {
    pub fn add(&mut self, other: LossTally) {
        self.pairs += other.pairs;
        self.loss += other.loss;
    }

    pub fn mean(&self) -> f64 {
        if self.pairs == 0 {
            0.0
        } else {
            self.loss / self.pairs as f64
        }
    }
}

/// Per-epoch progress.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpochReport {
    /// 0-based.
    pub epoch: usize,
    pub pairs: u64,
    pub mean_loss: f64,
    /// Learning rate at the end of the epoch.
    pub learning_rate: f64,
}

/// Buffers reused across pairs.
#[derive(Debug, Default)]
pub struct PairScratch {
    center: Vec<f64>,
    context: Vec<f64>,
    negatives: Vec<f64>,
    negative_ids: Vec<u32>,
    kept: Vec<u32>,
    grads: PairGradients,
}

/// Everything one walk's SGD pass needs besides the parameters.
#[derive(Debug)]
pub struct Schedule<'a> {
    config: &'a TrainConfig,
    noise: &'a NoiseDistribution,
    /// Relative frequency per word, for subsampling.
    frequency: Vec<f64>,
    total_steps: u64,
}

impl<'a> Schedule<'a> {
    pub fn new(
        config: &'a TrainConfig,
        noise: &'a NoiseDistribution,
        counts: &[u64],
        pairs_per_epoch: u64,
    ) -> Self {
        let total: u64 = counts.iter().sum();
        let frequency = match config.subsample {
            Some(_) => counts
                .iter()
                .map(|&c| c as f64 / total.max(1) as f64)
                .collect(),
            None => Vec::new(),
        };
        Schedule {
            config,
            noise,
            frequency,
            total_steps: pairs_per_epoch * config.epochs as u64,
        }
    }

    /// Learning rate after `step` pair updates.
    pub fn learning_rate(&self, step: u64) -> f64 {
        let progress = (step as f64 / self.total_steps.max(1) as f64).min(1.0);
        self.config.learning_rate * (1.0 - (1.0 - MIN_LR_FRACTION) * progress)
    }

    /// One SGD pass over the pairs of `walk`. `first_step` is the global
    /// index of the walk's first pair, which fixes its learning rates.
    pub fn train_walk<S: ParamStore + ?Sized, R: RngCore + ?Sized>(
        &self,
        store: &mut S,
        walk: &[u32],
        first_step: u64,
        rng: &mut R,
        scratch: &mut PairScratch,
    ) -> Result<LossTally, TrainError> {
        let d = store.dim();
        let k = self.config.negatives;
        let PairScratch {
            center,
            context,
            negatives,
            negative_ids,
            kept,
            grads,
        } = scratch;
        center.resize(d, 0.0);
        context.resize(d, 0.0);
        negatives.resize(k * d, 0.0);

        let walk = match self.config.subsample {
            Some(t) => {
                kept.clear();
                for &w in walk {
                    let f = self.frequency[w as usize];
                    let keep = libm::sqrt(t / f).min(1.0);
                    if rng::unit_f64(rng.next_u64()) < keep {
                        kept.push(w);
                    }
                }
                &kept[..]
            }
            None => walk,
        };

        let mut tally = LossTally::default();
        for (n, j) in window_pairs(walk.len(), self.config.window) {
            let (c, o) = (walk[n], walk[j]);
            let lr = self.learning_rate(first_step + tally.pairs);
            negative_ids.clear();
            for _ in 0..k {
                let neg = self.noise.sample(rng);
                if neg != o {
                    negative_ids.push(neg);
                }
            }
            store.read_input(c, center);
            store.read_output(o, context);
            for (i, &neg) in negative_ids.iter().enumerate() {
                store.read_output(neg, &mut negatives[i * d..(i + 1) * d]);
            }
            pair_loss_and_grads_into(center, context, &negatives[..negative_ids.len() * d], grads)
                .map_err(|_| TrainError::NonFinite {
                    center: c,
                    context: o,
                })?;
            store.add_output(o, -lr, &grads.context);
            for (i, &neg) in negative_ids.iter().enumerate() {
                store.add_output(neg, -lr, grads.negative(i));
            }
            store.add_input(c, -lr, &grads.center);
            tally.pairs += 1;
            tally.loss += grads.loss;
        }
        Ok(tally)
    }
}

/// Checks the corpus and returns `(counts, pairs per walk)`.
pub fn prepare_corpus<W: AsRef<[u32]>>(
    walks: &[W],
    vocab_size: usize,
    config: &TrainConfig,
) -> Result<(Vec<u64>, Vec<u64>), TrainError> {
    config.validate()?;
    if walks.is_empty() {
        return Err(TrainError::EmptyCorpus);
    }
    let counts = corpus_counts(walks, vocab_size)?;
    let pairs: Vec<u64> = walks
        .iter()
        .map(|w| window_pair_count(w.as_ref().len(), config.window))
        .collect();
    if pairs.iter().all(|&p| p == 0) {
        return Err(TrainError::NoPairs);
    }
    Ok((counts, pairs))
}

/// Trains embeddings on `walks` single-threaded. Results are bit-identical
/// for a fixed seed.
pub fn train<W: AsRef<[u32]>>(
    walks: &[W],
    vocab_size: usize,
    config: &TrainConfig,
) -> Result<EmbeddingMatrix, TrainError> {
    train_with_progress(walks, vocab_size, config, |_| {})
}

pub fn train_with_progress<W: AsRef<[u32]>>(
    walks: &[W],
    vocab_size: usize,
    config: &TrainConfig,
    mut on_epoch: impl FnMut(&EpochReport),
) -> Result<EmbeddingMatrix, TrainError> {
    let (counts, pairs) = prepare_corpus(walks, vocab_size, config)?;
    let noise = NoiseDistribution::new(&counts, config.noise_exponent)?;
    let per_epoch: u64 = pairs.iter().sum();
    let schedule = Schedule::new(config, &noise, &counts, per_epoch);
    let mut emb = init_embeddings(vocab_size, config.dim, config.seed);
    let mut scratch = PairScratch::default();
    for epoch in 0..config.epochs {
        let mut tally = LossTally::default();
        let mut step = epoch as u64 * per_epoch;
        for (i, walk) in walks.iter().enumerate() {
            let mut rng = rng::stream(config.seed, &[epoch as u64, i as u64]);
            tally.add(schedule.train_walk(&mut emb, walk.as_ref(), step, &mut rng, &mut scratch)?);
            step += pairs[i];
        }
        on_epoch(&EpochReport {
            epoch,
            pairs: tally.pairs,
            mean_loss: tally.mean(),
            learning_rate: schedule.learning_rate(step),
        });
    }
    Ok(emb)
}

/// Cosine similarity; zero when either vector is zero.
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let na = libm::sqrt(dot(a, a));
    let nb = libm::sqrt(dot(b, b));
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot(a, b) / (na * nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_vectors_give_two_log_two() {
        let z = [0.0; 4];
        let g = pair_loss_and_grads(&z, &z, &[&z]).unwrap();
        assert!((g.loss - 2.0 * core::f64::consts::LN_2).abs() < 1e-15);
        assert!((g.loss - 1.386294).abs() < 1e-6);
        assert!(g.center.iter().all(|&x| x == 0.0));
        assert!(g.context.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn gradients_at_zero_scores_use_half() {
        // u orthogonal to v and v_neg: both scores are 0, so s = 1/2.
        let u = [1.0, 0.0];
        let v = [0.0, 2.0];
        let n = [0.0, -3.0];
        let g = pair_loss_and_grads(&u, &v, &[&n]).unwrap();
        assert_eq!(g.context, [-0.5, 0.0]);
        assert_eq!(g.negative(0), [0.5, 0.0]);
        assert_eq!(g.center, [0.0, -0.5 * 2.0 + 0.5 * -3.0]);
    }

    #[test]
    fn positive_term_vanishes_as_score_grows() {
        let mut last = f64::INFINITY;
        for s in [0.0, 1.0, 5.0, 20.0, 100.0, 800.0] {
            let g = pair_loss_and_grads(&[s], &[1.0], &[]).unwrap();
            assert!(g.loss < last);
            last = g.loss;
        }
        assert!(last < 1e-300);
    }

    #[test]
    fn extreme_scores_stay_finite() {
        let g = pair_loss_and_grads(&[1e3], &[-1e3], &[&[1e3]]).unwrap();
        assert!(g.loss.is_finite() && g.loss > 1e6);
        assert!(pair_loss_and_grads(&[f64::NAN], &[1.0], &[]).is_err());
    }

    fn loss(u: &[f64], v: &[f64], negs: &[Vec<f64>]) -> f64 {
        let refs: Vec<&[f64]> = negs.iter().map(|r| &r[..]).collect();
        pair_loss_and_grads(u, v, &refs).unwrap().loss
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let h = 1e-5;
        for _ in 0..20 {
            let mut vecs: Vec<Vec<f64>> = (0..5)
                .map(|_| (0..8).map(|_| rng.random_range(-1.0..1.0)).collect())
                .collect();
            let refs: Vec<&[f64]> = vecs[2..].iter().map(|r| &r[..]).collect();
            let g = pair_loss_and_grads(&vecs[0], &vecs[1], &refs).unwrap();
            let analytic: Vec<f64> = g
                .center
                .iter()
                .chain(&g.context)
                .chain(&g.negatives)
                .copied()
                .collect();
            let mut k = 0;
            for r in 0..5 {
                for c in 0..8 {
                    let orig = vecs[r][c];
                    vecs[r][c] = orig + h;
                    let plus = loss(&vecs[0], &vecs[1], &vecs[2..]);
                    vecs[r][c] = orig - h;
                    let minus = loss(&vecs[0], &vecs[1], &vecs[2..]);
                    vecs[r][c] = orig;
                    let numeric = (plus - minus) / (2.0 * h);
                    let err = (numeric - analytic[k]).abs() / numeric.abs().max(analytic[k].abs()).max(1e-3);
                    assert!(err < 1e-6, "row {r} col {c}: {numeric} vs {}", analytic[k]);
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn init_is_bounded_and_seeded() {
        let e = init_embeddings(1, 1, 3);
        assert!((-0.5..0.5).contains(&e.input()[0]));
        assert_eq!(e.output(), [0.0]);
        assert_eq!(init_embeddings(10, 7, 3), init_embeddings(10, 7, 3));
        assert_ne!(init_embeddings(10, 7, 3), init_embeddings(10, 7, 4));
        let big = init_embeddings(10_000, 100, 5);
        let mean = big.input().iter().sum::<f64>() / big.input().len() as f64;
        assert!(mean.abs() < 0.001);
        assert!(big.input().iter().all(|x| x.abs() <= 0.005));
    }

    #[test]
    fn window_pairs_match_brute_force() {
        for len in 0..12 {
            for window in 1..6 {
                let mut brute = Vec::new();
                for n in 0..len as i64 {
                    for j in 0..len as i64 {
                        if j != n && (j - n).abs() <= window as i64 {
                            brute.push((n as usize, j as usize));
                        }
                    }
                }
                let got: Vec<_> = window_pairs(len, window).collect();
                assert_eq!(got, brute);
                assert_eq!(window_pair_count(len, window), brute.len() as u64);
            }
        }
    }

    #[test]
    fn noise_frequencies_follow_powered_counts() {
        let counts = [100u64, 10, 1, 0, 50];
        let noise = NoiseDistribution::new(&counts, 0.75).unwrap();
        let weights: Vec<f64> = counts.iter().map(|&c| (c as f64).powf(0.75)).collect();
        let total: f64 = weights.iter().sum();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut hist = [0u64; 5];
        let draws = 1_000_000;
        for _ in 0..draws {
            hist[noise.sample(&mut rng) as usize] += 1;
        }
        for i in 0..5 {
            let expected = weights[i] / total;
            assert!((hist[i] as f64 / draws as f64 - expected).abs() < 0.005);
            assert!((noise.probabilities()[i] - expected).abs() < 1e-12);
        }
        assert_eq!(hist[3], 0);
    }

    #[test]
    fn corpus_errors() {
        let config = TrainConfig::default();
        let empty: [&[u32]; 0] = [];
        assert_eq!(train(&empty, 3, &config), Err(TrainError::EmptyCorpus));
        assert_eq!(train(&[[0u32]], 3, &config), Err(TrainError::NoPairs));
        assert_eq!(
            train(&[[0u32, 5]], 3, &config),
            Err(TrainError::UnknownNode {
                node: 5,
                vocab_size: 3
            })
        );
        let bad = TrainConfig {
            negatives: 0,
            ..config
        };
        assert!(matches!(train(&[[0u32, 1]], 3, &bad), Err(TrainError::InvalidConfig(_))));
    }

    #[test]
    fn learning_rate_decays_linearly() {
        let config = TrainConfig::default();
        let noise = NoiseDistribution::new(&[1], 0.75).unwrap();
        let s = Schedule::new(&config, &noise, &[1], 100);
        assert_eq!(s.learning_rate(0), 0.025);
        let end = s.learning_rate(500);
        assert!((end - 0.025 * MIN_LR_FRACTION).abs() < 1e-15);
        let mid = s.learning_rate(250);
        assert!((mid - 0.025 * (1.0 - (1.0 - MIN_LR_FRACTION) * 0.5)).abs() < 1e-15);
    }

    #[test]
    fn single_pair_sanity() {
        let walks = alloc::vec![[0u32, 1]; 200];
        let config = TrainConfig {
            window: 1,
            dim: 8,
            epochs: 20,
            negatives: 1,
            ..TrainConfig::default()
        };
        let mut losses = Vec::new();
        let emb = train_with_progress(&walks, 2, &config, |r| losses.push(r.mean_loss)).unwrap();
        assert_eq!(losses.len(), 20);
        assert!(losses.last().unwrap() < &losses[0]);
        assert!(cosine(emb.input_row(0), emb.output_row(1)) > 0.5);
        assert!(cosine(emb.input_row(1), emb.output_row(0)) > 0.5);
    }

    #[test]
    fn training_is_deterministic() {
        let walks = alloc::vec![alloc::vec![0u32, 1, 2, 1, 0, 3], alloc::vec![3, 2, 1]];
        let config = TrainConfig {
            dim: 6,
            epochs: 3,
            ..TrainConfig::default()
        };
        let a = train(&walks, 4, &config).unwrap();
        let b = train(&walks, 4, &config).unwrap();
        assert_eq!(a, b);
        let c = train(&walks, 4, &TrainConfig { seed: 99, ..config }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn subsampling_still_trains() {
        let walks = alloc::vec![alloc::vec![0u32, 1, 0, 1, 2, 1, 0]; 50];
        let config = TrainConfig {
            dim: 4,
            subsample: Some(1e-1),
            ..TrainConfig::default()
        };
        let e = train(&walks, 3, &config).unwrap();
        assert!(e.input().iter().all(|x| x.is_finite()));
        let bad = TrainConfig {
            subsample: Some(0.0),
            ..config
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn cosine_cases() {
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 3.0]), 0.0);
        assert!((cosine(&[1.0, 1.0], &[2.0, 2.0]) - 1.0).abs() < 1e-15);
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 1.0]), 0.0);
    }
}
