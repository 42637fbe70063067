//! Walker/Vose alias tables: O(n) construction, O(1) draws.

use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AliasError {
    #[error("cannot sample from an empty distribution")]
    Empty,
    #[error("all weights are zero")]
    Degenerate,
    #[error("weight {index} is negative")]
    Negative { index: usize },
    #[error("weight {index} is not finite")]
    NonFinite { index: usize },
}

/// One column: keep it with probability `prob`, else move to `alias`. The
/// two live side by side so that a draw touches a single cache line.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Column {
    pub prob: f64,
    pub alias: u32,
}

/// An owned alias table over outcomes `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AliasTable {
    columns: Vec<Column>,
}

impl AliasTable {
    /// Builds a table sampling `i` with probability `weights[i] / sum(weights)`.
    pub fn new(weights: &[f64]) -> Result<Self, AliasError> {
        let mut columns = vec![Column::default(); weights.len()];
        fill(weights, &mut columns, &mut Scratch::default())?;
        Ok(AliasTable { columns })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn as_ref(&self) -> AliasRef<'_> {
        AliasRef {
            columns: &self.columns,
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        self.as_ref().sample(rng)
    }

    /// The exact distribution encoded by the table.
    pub fn distribution(&self) -> Vec<f64> {
        self.as_ref().distribution()
    }
}

/// A borrowed alias table, e.g. one slice of a packed transition index.
#[derive(Clone, Copy, Debug)]
pub struct AliasRef<'a> {
    pub(crate) columns: &'a [Column],
}

impl AliasRef<'_> {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Draws one outcome using a single 64-bit word `b` from `rng`. In fixed
    /// point `b * n / 2^64` has the column as its integer part (the high
    /// word) and the coin as its fraction (the low word).
    #[inline]
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        let n = self.columns.len();
        let wide = rng.next_u64() as u128 * n as u128;
        let column = (wide >> 64) as usize;
        let coin = crate::rng::unit_f64(wide as u64);
        let c = self.columns[column];
        if coin < c.prob {
            column
        } else {
            c.alias as usize
        }
    }

    /// Reconstructs the sampling distribution from the table.
    pub fn distribution(&self) -> Vec<f64> {
        let n = self.columns.len();
        let mut dist = vec![0.0; n];
        for (i, c) in self.columns.iter().enumerate() {
            dist[i] += c.prob;
            dist[c.alias as usize] += 1.0 - c.prob;
        }
        for d in &mut dist {
            *d /= n as f64;
        }
        dist
    }
}

/// Reusable work lists for repeated table construction.
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    scaled: Vec<f64>,
    small: Vec<u32>,
    large: Vec<u32>,
}

/// Vose's construction into a caller-provided slice of length `weights.len()`.
pub(crate) fn fill(
    weights: &[f64],
    out: &mut [Column],
    scratch: &mut Scratch,
) -> Result<(), AliasError> {
    let n = weights.len();
    debug_assert!(out.len() == n);
    if n == 0 {
        return Err(AliasError::Empty);
    }
    let mut total = 0.0;
    for (index, &w) in weights.iter().enumerate() {
        if !w.is_finite() {
            return Err(AliasError::NonFinite { index });
        }
        if w < 0.0 {
            return Err(AliasError::Negative { index });
        }
        total += w;
    }
    if total <= 0.0 {
        return Err(AliasError::Degenerate);
    }
    if !total.is_finite() {
        return Err(AliasError::NonFinite { index: n - 1 });
    }

    let Scratch {
        scaled,
        small,
        large,
    } = scratch;
    scaled.clear();
    small.clear();
    large.clear();
    let scale = n as f64 / total;
    for (i, &w) in weights.iter().enumerate() {
        let s = w * scale;
        scaled.push(s);
        if s < 1.0 {
            small.push(i as u32);
        } else {
            large.push(i as u32);
        }
    }

    let mut last_large = large.last().copied().unwrap_or(0);
    while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
        small.pop();
        out[s as usize].prob = scaled[s as usize];
        out[s as usize].alias = l;
        last_large = l;
        let rest = (scaled[l as usize] + scaled[s as usize]) - 1.0;
        scaled[l as usize] = rest;
        if rest < 1.0 {
            large.pop();
            small.push(l);
        }
    }
    for &l in large.iter() {
        out[l as usize].prob = 1.0;
        out[l as usize].alias = l;
    }
    // Only rounding leaves columns here; their scaled mass is ~1.
    for &s in small.iter() {
        if weights[s as usize] > 0.0 {
            out[s as usize].prob = 1.0;
            out[s as usize].alias = s;
        } else {
            out[s as usize].prob = 0.0;
            out[s as usize].alias = last_large;
        }
    }
    Ok(())
}
