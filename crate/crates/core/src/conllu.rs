//! CoNLL-U ingestion and vocabulary construction.
//!
//! Only the ID, FORM, UPOS, HEAD and DEPREL columns are consumed. Multiword
//! range lines (`1-2`) and empty nodes (`3.1`) are skipped.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// One token of a parsed sentence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    /// 1-based position in the sentence.
    pub id: u32,
    pub form: String,
    pub upos: String,
    /// 0 for the root, otherwise the id of the governing token.
    pub head: u32,
    pub deprel: String,
}

impl Token {
    /// Formats the token as a 10-column CoNLL-U line (without the newline).
    ///
    /// Unused columns are written as `_`.
    pub fn to_conllu_line(&self) -> String {
        format!(
            "{}\t{}\t_\t{}\t_\t_\t{}\t{}\t_\t_",
            self.id, self.form, self.upos, self.head, self.deprel
        )
    }
}

/// Why a sentence is not a well-formed dependency tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    Empty,
    /// Token ids must run 1, 2, .., n.
    NonSequentialId { expected: u32, found: u32 },
    EmptyField { token: u32, column: &'static str },
    HeadOutOfRange { token: u32, head: u32 },
    SelfHead { token: u32 },
    NoRoot,
    MultipleRoots { first: u32, second: u32 },
    Cycle { token: u32 },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Empty => write!(f, "sentence has no tokens"),
            TreeError::NonSequentialId { expected, found } => {
                write!(f, "token id {found} out of sequence (expected {expected})")
            }
            TreeError::EmptyField { token, column } => {
                write!(f, "token {token} has an empty {column}")
            }
            TreeError::HeadOutOfRange { token, head } => {
                write!(f, "token {token} has head {head} outside the sentence")
            }
            TreeError::SelfHead { token } => write!(f, "token {token} is its own head"),
            TreeError::NoRoot => write!(f, "no token has head 0"),
            TreeError::MultipleRoots { first, second } => {
                write!(f, "tokens {first} and {second} both have head 0")
            }
            TreeError::Cycle { token } => write!(f, "head chain from token {token} is cyclic"),
        }
    }
}

/// A validated dependency tree: one root, every head in range, no cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SentenceTree {
    tokens: Vec<Token>,
}

impl SentenceTree {
    pub fn new(tokens: Vec<Token>) -> Result<Self, TreeError> {
        validate_tree(&tokens)?;
        Ok(SentenceTree { tokens })
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn root(&self) -> &Token {
        self.tokens
            .iter()
            .find(|t| t.head == 0)
            .expect("validated tree has a root")
    }

    /// The governing token of `token`, `None` for the root.
    pub fn head_of(&self, token: &Token) -> Option<&Token> {
        match token.head {
            0 => None,
            h => Some(&self.tokens[h as usize - 1]),
        }
    }

    /// Iterates over `(head, dependent)` pairs, one per non-root token.
    pub fn arcs(&self) -> impl Iterator<Item = (&Token, &Token)> + '_ {
        self.tokens
            .iter()
            .filter_map(move |t| self.head_of(t).map(|h| (h, t)))
    }

    /// Formats the sentence as a CoNLL-U block terminated by a blank line.
    pub fn to_conllu(&self) -> String {
        let mut out = String::new();
        for token in &self.tokens {
            out.push_str(&token.to_conllu_line());
            out.push('\n');
        }
        out.push('\n');
        out
    }

    fn into_tokens(self) -> Vec<Token> {
        self.tokens
    }
}

fn validate_tree(tokens: &[Token]) -> Result<(), TreeError> {
    if tokens.is_empty() {
        return Err(TreeError::Empty);
    }
    let n = tokens.len() as u32;
    let mut root = None;
    for (i, t) in tokens.iter().enumerate() {
        let expected = i as u32 + 1;
        if t.id != expected {
            return Err(TreeError::NonSequentialId {
                expected,
                found: t.id,
            });
        }
        if t.form.is_empty() {
            return Err(TreeError::EmptyField {
                token: t.id,
                column: "FORM",
            });
        }
        if t.upos.is_empty() {
            return Err(TreeError::EmptyField {
                token: t.id,
                column: "UPOS",
            });
        }
        if t.head > n {
            return Err(TreeError::HeadOutOfRange {
                token: t.id,
                head: t.head,
            });
        }
        if t.head == t.id {
            return Err(TreeError::SelfHead { token: t.id });
        }
        if t.head == 0 {
            if let Some(first) = root {
                return Err(TreeError::MultipleRoots {
                    first,
                    second: t.id,
                });
            }
            root = Some(t.id);
        }
    }
    if root.is_none() {
        return Err(TreeError::NoRoot);
    }

    // 0 = unvisited, 1 = on the current chain, 2 = reaches the root
    let mut state = vec![0u8; tokens.len() + 1];
    state[0] = 2;
    let mut chain = Vec::new();
    for start in 1..=tokens.len() {
        let mut cur = start;
        while state[cur] == 0 {
            state[cur] = 1;
            chain.push(cur);
            cur = tokens[cur - 1].head as usize;
        }
        if state[cur] == 1 {
            return Err(TreeError::Cycle {
                token: start as u32,
            });
        }
        for c in chain.drain(..) {
            state[c] = 2;
        }
    }
    Ok(())
}

/// Ingestion options.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseConfig {
    /// Lowercase every FORM so that "The" and "the" share a node.
    pub case_fold: bool,
    /// Remove tokens tagged `PUNCT`; their dependents are re-attached to the
    /// nearest kept ancestor. A punctuation root is kept.
    pub drop_punct: bool,
}

impl Default for ParseConfig {
    fn default() -> Self {
        ParseConfig {
            case_fold: true,
            drop_punct: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: expected 10 tab-separated columns, found {found}")]
    Columns { line: usize, found: usize },
    #[error("line {line}: {column} is not an integer: {value:?}")]
    NotInteger {
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("sentence {sentence}{} (line {line}): {error}", sent_id.as_ref().map(|s| format!(" [{s}]")).unwrap_or_default())]
    Tree {
        /// 1-based sentence number in the stream.
        sentence: usize,
        sent_id: Option<String>,
        /// Line of the sentence's first token.
        line: usize,
        error: TreeError,
    },
    #[error("min_count must be at least 1")]
    ZeroMinCount,
    #[error("every word was filtered out; the vocabulary is empty")]
    EmptyVocabulary,
}

/// Incremental CoNLL-U parser, fed one line at a time.
///
/// Useful when the input is read from a file or socket; [`parse_conllu`]
/// drives it over an in-memory string.
#[derive(Debug)]
pub struct ConlluParser {
    config: ParseConfig,
    line: usize,
    sentence: usize,
    start_line: usize,
    sent_id: Option<String>,
    pending: Vec<Token>,
}

impl ConlluParser {
    pub fn new(config: ParseConfig) -> Self {
        ConlluParser {
            config,
            line: 0,
            sentence: 0,
            start_line: 0,
            sent_id: None,
            pending: Vec::new(),
        }
    }

    /// Consumes one line (with or without its line terminator). Returns a
    /// sentence when the line closes one.
    pub fn push_line(&mut self, line: &str) -> Result<Option<SentenceTree>, IngestError> {
        self.line += 1;
        let line = line.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            return self.close();
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(id) = comment.trim_start().strip_prefix("sent_id") {
                let id = id.trim_start().trim_start_matches('=').trim();
                self.sent_id = Some(id.to_owned());
            }
            return Ok(None);
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(IngestError::Columns {
                line: self.line,
                found: cols.len(),
            });
        }
        if cols[0].contains(['-', '.']) {
            return Ok(None);
        }
        let id = self.integer(cols[0], "ID")?;
        let head = self.integer(cols[6], "HEAD")?;
        if self.pending.is_empty() {
            self.start_line = self.line;
        }
        let form = if self.config.case_fold {
            cols[1].to_lowercase()
        } else {
            cols[1].to_owned()
        };
        self.pending.push(Token {
            id,
            form,
            upos: cols[3].to_owned(),
            head,
            deprel: cols[7].to_owned(),
        });
        Ok(None)
    }

    /// Flushes a final sentence that was not followed by a blank line.
    pub fn finish(mut self) -> Result<Option<SentenceTree>, IngestError> {
        self.close()
    }

    fn integer(&self, value: &str, column: &'static str) -> Result<u32, IngestError> {
        value.parse().map_err(|_| IngestError::NotInteger {
            line: self.line,
            column,
            value: value.to_owned(),
        })
    }

    fn close(&mut self) -> Result<Option<SentenceTree>, IngestError> {
        let sent_id = self.sent_id.take();
        if self.pending.is_empty() {
            return Ok(None);
        }
        self.sentence += 1;
        let tokens = core::mem::take(&mut self.pending);
        let tree = SentenceTree::new(tokens).map_err(|error| IngestError::Tree {
            sentence: self.sentence,
            sent_id,
            line: self.start_line,
            error,
        })?;
        Ok(Some(if self.config.drop_punct {
            drop_punctuation(tree)
        } else {
            tree
        }))
    }
}

/// Parses a whole CoNLL-U document. Accepts `\n` and `\r\n` line endings.
pub fn parse_conllu(text: &str, config: ParseConfig) -> Result<Vec<SentenceTree>, IngestError> {
    let mut parser = ConlluParser::new(config);
    let mut out = Vec::new();
    for line in text.split('\n') {
        if let Some(tree) = parser.push_line(line)? {
            out.push(tree);
        }
    }
    out.extend(parser.finish()?);
    Ok(out)
}

fn drop_punctuation(tree: SentenceTree) -> SentenceTree {
    let tokens = tree.into_tokens();
    let is_dropped = |t: &Token| t.upos == "PUNCT" && t.head != 0;
    if !tokens.iter().any(is_dropped) {
        return SentenceTree { tokens };
    }
    let mut new_id = vec![0u32; tokens.len() + 1];
    let mut next = 1;
    for t in &tokens {
        if !is_dropped(t) {
            new_id[t.id as usize] = next;
            next += 1;
        }
    }
    let kept_ancestor = |mut head: u32| {
        while head != 0 && is_dropped(&tokens[head as usize - 1]) {
            head = tokens[head as usize - 1].head;
        }
        new_id[head as usize]
    };
    let kept: Vec<Token> = tokens
        .iter()
        .filter(|t| !is_dropped(t))
        .map(|t| Token {
            id: new_id[t.id as usize],
            head: kept_ancestor(t.head),
            ..t.clone()
        })
        .collect();
    debug_assert!(validate_tree(&kept).is_ok());
    SentenceTree { tokens: kept }
}

/// Word types retained from a corpus, indexed densely by descending frequency.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    words: Vec<String>,
    index: BTreeMap<String, u32>,
    counts: Vec<u64>,
    tags: Vec<BTreeMap<String, u64>>,
}

impl Vocabulary {
    /// Builds a vocabulary from `(word, count)` pairs, ordering by descending
    /// count then by word. Tag histograms start empty.
    pub fn from_counts<I, S>(counts: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut entries: Vec<(String, u64)> =
            counts.into_iter().map(|(w, c)| (w.into(), c)).collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        entries.dedup_by(|a, b| a.0 == b.0);
        let mut vocab = Vocabulary::default();
        for (word, count) in entries {
            vocab.index.insert(word.clone(), vocab.words.len() as u32);
            vocab.words.push(word);
            vocab.counts.push(count);
            vocab.tags.push(BTreeMap::new());
        }
        vocab
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, index: u32) -> &str {
        &self.words[index as usize]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn count(&self, index: u32) -> u64 {
        self.counts[index as usize]
    }

    pub fn total_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn tag_histogram(&self, index: u32) -> &BTreeMap<String, u64> {
        &self.tags[index as usize]
    }

    /// Most frequent tag of a word; ties go to the lexicographically smallest.
    pub fn dominant_tag(&self, index: u32) -> Option<&str> {
        let mut best: Option<(&String, u64)> = None;
        for (tag, &count) in &self.tags[index as usize] {
            if best.is_none_or(|(_, c)| count > c) {
                best = Some((tag, count));
            }
        }
        best.map(|(t, _)| t.as_str())
    }

    /// All tags observed on retained words, sorted.
    pub fn tag_set(&self) -> Vec<String> {
        let mut tags: Vec<String> = self
            .tags
            .iter()
            .flat_map(|h| h.keys().cloned())
            .collect();
        tags.sort_unstable();
        tags.dedup();
        tags
    }
}

/// Counts word forms over `trees` and keeps those occurring at least
/// `min_count` times.
pub fn build_vocab(trees: &[SentenceTree], min_count: u64) -> Result<Vocabulary, IngestError> {
    if min_count == 0 {
        return Err(IngestError::ZeroMinCount);
    }
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for token in trees.iter().flat_map(|t| t.tokens()) {
        *counts.entry(&token.form).or_default() += 1;
    }
    let mut vocab = Vocabulary::from_counts(counts.into_iter().filter(|&(_, c)| c >= min_count));
    if vocab.is_empty() {
        return Err(IngestError::EmptyVocabulary);
    }
    for token in trees.iter().flat_map(|t| t.tokens()) {
        if let Some(i) = vocab.index_of(&token.form) {
            *vocab.tags[i as usize].entry(token.upos.clone()).or_default() += 1;
        }
    }
    Ok(vocab)
}
