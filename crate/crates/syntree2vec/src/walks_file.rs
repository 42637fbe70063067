//! Walk corpus files: one walk per line, words separated by single spaces.
//!
//! The words make the corpus usable by any external skip-gram trainer.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::Path;

use syntree2vec_core::{GiantGraph, Vocabulary, Walk};

use crate::error::{Error, Result};
use crate::text::{escape, unescape};

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum WalkFileError {
    #[error("line {line}: {word:?} is not in the vocabulary")]
    UnknownWord { line: usize, word: String },
    #[error("line {line}: invalid escape in {field:?}")]
    BadEscape { line: usize, field: String },
}

pub fn write_walks<W: Write>(out: &mut W, graph: &GiantGraph, walks: &[Walk]) -> io::Result<()> {
    let mut line = String::new();
    for walk in walks {
        line.clear();
        for (i, &node) in walk.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&escape(graph.word(node)));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn save_walks(path: impl AsRef<Path>, graph: &GiantGraph, walks: &[Walk]) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(Error::io(path))?;
    let mut out = io::BufWriter::new(file);
    write_walks(&mut out, graph, walks)
        .and_then(|_| out.flush())
        .map_err(Error::io(path))
}

fn lines_of_words(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.split_whitespace().collect()))
}

/// Reads walks whose words must all be known to `lookup`.
pub fn parse_walks_with(
    text: &str,
    lookup: impl Fn(&str) -> Option<u32>,
) -> Result<Vec<Vec<u32>>, WalkFileError> {
    lines_of_words(text)
        .map(|(line, fields)| {
            fields
                .into_iter()
                .map(|field| {
                    let word = unescape(field).ok_or_else(|| WalkFileError::BadEscape {
                        line,
                        field: field.to_string(),
                    })?;
                    lookup(&word).ok_or_else(|| WalkFileError::UnknownWord {
                        line,
                        word: word.into_owned(),
                    })
                })
                .collect()
        })
        .collect()
}

/// Reads walks and derives the vocabulary from them, ordered by descending
/// frequency then by word.
pub fn parse_walks(text: &str) -> Result<(Vocabulary, Vec<Vec<u32>>), WalkFileError> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for (line, fields) in lines_of_words(text) {
        for field in fields {
            let word = unescape(field).ok_or_else(|| WalkFileError::BadEscape {
                line,
                field: field.to_string(),
            })?;
            *counts.entry(word.into_owned()).or_default() += 1;
        }
    }
    let vocab = Vocabulary::from_counts(counts);
    let walks = parse_walks_with(text, |w| vocab.index_of(w))?;
    Ok((vocab, walks))
}
