//! word2vec text format: a `V d` header, then one `word f_1 .. f_d` line per
//! word. Values are written with 9 significant digits.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use syntree2vec_core::sgns::cosine;
use syntree2vec_core::EmbeddingMatrix;

use crate::error::{Error, Result};
use crate::text::{escape, unescape};

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingFileError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

fn format_error(line: usize, message: impl Into<String>) -> EmbeddingFileError {
    EmbeddingFileError::Format {
        line,
        message: message.into(),
    }
}

/// Loaded word vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct WordVectors {
    words: Vec<String>,
    index: HashMap<String, usize>,
    dim: usize,
    data: Vec<f64>,
}

impl WordVectors {
    pub fn new(words: Vec<String>, dim: usize, data: Vec<f64>) -> Option<Self> {
        if data.len() != words.len() * dim {
            return None;
        }
        let index: HashMap<String, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        if index.len() != words.len() {
            return None;
        }
        Some(WordVectors {
            words,
            index,
            dim,
            data,
        })
    }

    /// The input vectors of a trained matrix, labelled with `words`.
    pub fn from_embeddings(words: &[String], matrix: &EmbeddingMatrix) -> Option<Self> {
        if words.len() != matrix.vocab_size() {
            return None;
        }
        Self::new(words.to_vec(), matrix.dim(), matrix.input().to_vec())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.index_of(word).map(|i| self.vector(i))
    }

    /// The `top_n` words most cosine-similar to `word`, excluding `word`
    /// itself. Ties keep vocabulary order.
    pub fn nearest(&self, word: &str, top_n: usize) -> Result<Vec<(&str, f64)>> {
        let q = self
            .index_of(word)
            .ok_or_else(|| Error::NotInVocabulary(word.to_string()))?;
        let query = self.vector(q);
        let mut scored: Vec<(usize, f64)> = (0..self.len())
            .filter(|&i| i != q)
            .map(|i| (i, cosine(query, self.vector(i))))
            .collect();
        scored.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap_or(Ordering::Equal)
                .then(a.0.cmp(&b.0))
        });
        scored.truncate(top_n);
        Ok(scored
            .into_iter()
            .map(|(i, s)| (self.words[i].as_str(), s))
            .collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.data.len() * 16);
        writeln!(out, "{} {}", self.len(), self.dim).unwrap();
        for (i, word) in self.words.iter().enumerate() {
            out.push_str(&escape(word));
            for x in self.vector(i) {
                write!(out, " {x:.8e}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, EmbeddingFileError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| format_error(1, "missing header"))?;
        let (vocab_size, dim) = header
            .split_once(' ')
            .and_then(|(v, d)| Some((v.trim().parse::<usize>().ok()?, d.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| format_error(1, format!("malformed header {header:?}, expected \"V d\"")))?;

        let mut words = Vec::with_capacity(vocab_size);
        let mut data = Vec::with_capacity(vocab_size * dim);
        let mut last_line = 1;
        for (line, content) in lines {
            last_line = line;
            if content.trim().is_empty() {
                continue;
            }
            if words.len() == vocab_size {
                return Err(format_error(line, format!("more than {vocab_size} rows")));
            }
            let mut fields = content.split_whitespace();
            let field = fields.next().expect("non-blank line");
            let word = unescape(field).ok_or_else(|| format_error(line, "invalid escape in word"))?;
            let start = data.len();
            for f in fields {
                let x: f64 = f
                    .parse()
                    .map_err(|_| format_error(line, format!("invalid value {f:?}")))?;
                data.push(x);
            }
            if data.len() - start != dim {
                return Err(format_error(
                    line,
                    format!("expected {dim} values, found {}", data.len() - start),
                ));
            }
            words.push(word.into_owned());
        }
        if words.len() != vocab_size {
            return Err(format_error(
                last_line,
                format!("expected {vocab_size} rows, found {}", words.len()),
            ));
        }
        WordVectors::new(words, dim, data).ok_or_else(|| format_error(1, "duplicate word"))
    }
}

pub fn save_embeddings(path: impl AsRef<Path>, vectors: &WordVectors) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, vectors.to_text()).map_err(Error::io(path))
}

pub fn load_embeddings(path: impl AsRef<Path>) -> Result<WordVectors> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(Error::io(path))?;
    WordVectors::from_text(&text).map_err(|source| Error::EmbeddingFile {
        path: path.to_owned(),
        source,
    })
}
