//! Versioned text format for a giant graph and its tag matrix.
//!
//! ```text
//! syntree2vec-graph 1
//! nodes <N>
//! <index> <word> <tag>        N lines, index = 0..N
//! edges <E>
//! <u> <v> <weight>            E lines, u < v, sorted by (u, v)
//! tags <T>
//! <index> <tag>               T lines
//! matrix
//! <c_0> ... <c_T-1>           T lines of counts
//! end
//! ```
//!
//! Words and tags use the escapes of [`crate::text`]. Fields are separated by
//! a single space and lines by `\n`.

use std::fmt::Write as _;
use std::path::Path;

use syntree2vec_core::graph::GraphError;
use syntree2vec_core::{GiantGraph, TagTransitionMatrix};

use crate::error::{Error, Result};
use crate::text::{escape, unescape};

pub const MAGIC: &str = "syntree2vec-graph";
pub const VERSION: u32 = 1;

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphFileError {
    #[error("byte {offset}: {message}")]
    Format { offset: usize, message: String },
    #[error("unsupported graph file version {found} (expected {VERSION})")]
    Version { found: String },
}

/// Serializes the graph and matrix.
pub fn to_text(graph: &GiantGraph, matrix: &TagTransitionMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(out, "nodes {}", graph.node_count()).unwrap();
    for v in 0..graph.node_count() as u32 {
        writeln!(out, "{v} {} {}", escape(graph.word(v)), escape(graph.tag(v))).unwrap();
    }
    writeln!(out, "edges {}", graph.edge_count()).unwrap();
    for (u, v, w) in graph.edges() {
        writeln!(out, "{u} {v} {w}").unwrap();
    }
    writeln!(out, "tags {}", matrix.len()).unwrap();
    for (i, tag) in matrix.tags().iter().enumerate() {
        writeln!(out, "{i} {}", escape(tag)).unwrap();
    }
    out.push_str("matrix\n");
    for a in 0..matrix.len() {
        let row: Vec<String> = matrix.row(a).iter().map(u64::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    text: &'a str,
    pos: usize,
    /// Offset of the line last returned.
    start: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str, GraphFileError> {
        if self.pos >= self.text.len() {
            return Err(GraphFileError::Format {
                offset: self.text.len(),
                message: "unexpected end of file".into(),
            });
        }
        self.start = self.pos;
        let rest = &self.text[self.pos..];
        let (line, advance) = match rest.find('\n') {
            Some(i) => (&rest[..i], i + 1),
            None => (rest, rest.len()),
        };
        self.pos += advance;
        Ok(line.strip_suffix('\r').unwrap_or(line))
    }

    fn error(&self, message: impl Into<String>) -> GraphFileError {
        GraphFileError::Format {
            offset: self.start,
            message: message.into(),
        }
    }

    fn fields<const N: usize>(&mut self, what: &str) -> Result<[&'a str; N], GraphFileError> {
        let line = self.next()?;
        let fields: Vec<&str> = line.split(' ').collect();
        fields
            .try_into()
            .map_err(|_| self.error(format!("expected {N} fields in {what} line")))
    }

    fn number<T: std::str::FromStr>(&self, field: &str, what: &str) -> Result<T, GraphFileError> {
        field
            .parse()
            .map_err(|_| self.error(format!("invalid {what} {field:?}")))
    }

    fn word(&self, field: &'a str) -> Result<String, GraphFileError> {
        match unescape(field) {
            Some(w) if !w.is_empty() => Ok(w.into_owned()),
            _ => Err(self.error(format!("invalid word field {field:?}"))),
        }
    }

    fn section(&mut self, name: &str) -> Result<usize, GraphFileError> {
        let [key, count] = self.fields::<2>(name)?;
        if key != name {
            return Err(self.error(format!("expected {name:?} section, found {key:?}")));
        }
        self.number(count, "count")
    }

    fn keyword(&mut self, name: &str) -> Result<(), GraphFileError> {
        if self.next()? != name {
            return Err(self.error(format!("expected {name:?}")));
        }
        Ok(())
    }
}

/// Parses a graph file.
pub fn from_text(text: &str) -> Result<(GiantGraph, TagTransitionMatrix), GraphFileError> {
    let mut lines = Lines {
        text,
        pos: 0,
        start: 0,
    };
    let header = lines.next()?;
    match header.split_once(' ') {
        Some((MAGIC, version)) if version == VERSION.to_string() => {}
        Some((MAGIC, version)) => {
            return Err(GraphFileError::Version {
                found: version.to_string(),
            })
        }
        _ => return Err(lines.error("not a syntree2vec graph file")),
    }

    let n = lines.section("nodes")?;
    let mut nodes = Vec::with_capacity(n.min(1 << 20));
    for i in 0..n {
        let [index, word, tag] = lines.fields::<3>("node")?;
        if lines.number::<usize>(index, "node index")? != i {
            return Err(lines.error(format!("expected node index {i}")));
        }
        nodes.push((lines.word(word)?, lines.word(tag)?));
    }

    let e = lines.section("edges")?;
    let mut edges = Vec::with_capacity(e.min(1 << 20));
    let mut last = None;
    for _ in 0..e {
        let [u, v, w] = lines.fields::<3>("edge")?;
        let (u, v, w): (u32, u32, u64) = (
            lines.number(u, "node")?,
            lines.number(v, "node")?,
            lines.number(w, "weight")?,
        );
        if u >= v || last.is_some_and(|l| l >= (u, v)) {
            return Err(lines.error("edges must have u < v and be sorted without duplicates"));
        }
        if v as usize >= n {
            return Err(lines.error(format!("edge ({u}, {v}) references a missing node")));
        }
        if w == 0 {
            return Err(lines.error("edge weight must be positive"));
        }
        last = Some((u, v));
        edges.push((u, v, w));
    }

    let t = lines.section("tags")?;
    let mut tags = Vec::with_capacity(t.min(1 << 16));
    for i in 0..t {
        let [index, tag] = lines.fields::<2>("tag")?;
        if lines.number::<usize>(index, "tag index")? != i {
            return Err(lines.error(format!("expected tag index {i}")));
        }
        tags.push(lines.word(tag)?);
    }
    lines.keyword("matrix")?;
    let mut counts = Vec::with_capacity(t * t);
    for _ in 0..t {
        let line = lines.next()?;
        let row: Vec<&str> = if line.is_empty() {
            Vec::new()
        } else {
            line.split(' ').collect()
        };
        if row.len() != t {
            return Err(lines.error(format!("matrix row must have {t} entries")));
        }
        for c in row {
            counts.push(lines.number::<u64>(c, "count")?);
        }
    }
    let matrix_line = lines.start;
    lines.keyword("end")?;
    if !text[lines.pos..].trim().is_empty() {
        return Err(GraphFileError::Format {
            offset: lines.pos,
            message: "trailing data after end".into(),
        });
    }

    let graph = GiantGraph::from_edges(nodes, edges).map_err(|e| lines.error(e.to_string()))?;
    let matrix = TagTransitionMatrix::from_counts(tags, counts).map_err(|e| {
        let message = e.to_string();
        match e {
            GraphError::Asymmetric(..) | GraphError::MatrixShape { .. } => GraphFileError::Format {
                offset: matrix_line,
                message,
            },
            _ => lines.error(message),
        }
    })?;
    Ok((graph, matrix))
}

pub fn export_graph(
    path: impl AsRef<Path>,
    graph: &GiantGraph,
    matrix: &TagTransitionMatrix,
) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_text(graph, matrix)).map_err(Error::io(path))
}

pub fn import_graph(path: impl AsRef<Path>) -> Result<(GiantGraph, TagTransitionMatrix)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(Error::io(path))?;
    from_text(&text).map_err(|source| Error::GraphFile {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (GiantGraph, TagTransitionMatrix) {
        let nodes = [("the", "DET"), ("new york", "PROPN"), ("kicked", "VERB")]
            .iter()
            .map(|&(w, t)| (w.to_string(), t.to_string()))
            .collect();
        let g = GiantGraph::from_edges(nodes, [(0, 1, 2), (1, 2, 1)]).unwrap();
        let mut m = TagTransitionMatrix::zeros(["DET", "PROPN", "VERB"]);
        m.add_arc(0, 1);
        m.add_arc(0, 1);
        m.add_arc(1, 2);
        (g, m)
    }

    #[test]
    fn exact_layout() {
        let (g, m) = sample();
        assert_eq!(
            to_text(&g, &m),
            "syntree2vec-graph 1\nnodes 3\n0 the DET\n1 new\\syork PROPN\n2 kicked VERB\n\
             edges 2\n0 1 2\n1 2 1\ntags 3\n0 DET\n1 PROPN\n2 VERB\nmatrix\n0 2 0\n2 0 1\n0 1 0\nend\n"
        );
    }

    #[test]
    fn round_trip() {
        let (g, m) = sample();
        assert_eq!(from_text(&to_text(&g, &m)).unwrap(), (g, m));
        let empty = GiantGraph::from_edges(Vec::new(), []).unwrap();
        let zero = TagTransitionMatrix::zeros(Vec::<String>::new());
        assert_eq!(from_text(&to_text(&empty, &zero)).unwrap(), (empty, zero));
    }

    #[test]
    fn crlf_is_accepted() {
        let (g, m) = sample();
        let text = to_text(&g, &m).replace('\n', "\r\n");
        assert_eq!(from_text(&text).unwrap(), (g, m));
    }

    #[test]
    fn truncation_reports_end_offset() {
        let (g, m) = sample();
        let text = to_text(&g, &m);
        for cut in [0, 10, text.len() / 2, text.len() - 4] {
            let err = from_text(&text[..cut]).unwrap_err();
            assert!(matches!(err, GraphFileError::Format { .. }), "cut {cut}: {err:?}");
        }
        let cut = &text[..text.find("edges").unwrap()];
        assert_eq!(
            from_text(cut),
            Err(GraphFileError::Format {
                offset: cut.len(),
                message: "unexpected end of file".into()
            })
        );
    }

    #[test]
    fn version_mismatch() {
        let (g, m) = sample();
        let text = to_text(&g, &m).replacen(" 1\n", " 2\n", 1);
        assert_eq!(
            from_text(&text),
            Err(GraphFileError::Version { found: "2".into() })
        );
    }

    #[test]
    fn malformed_lines_report_their_offset() {
        let (g, m) = sample();
        let text = to_text(&g, &m);
        let bad = text.replace("1 2 1\n", "1 2 x\n");
        let offset = bad.find("1 2 x").unwrap();
        assert!(matches!(from_text(&bad), Err(GraphFileError::Format { offset: o, .. }) if o == offset));

        let asym = text.replace("matrix\n0 2 0\n", "matrix\n0 3 0\n");
        assert!(matches!(from_text(&asym), Err(GraphFileError::Format { .. })));

        let dup = text.replace("edges 2\n0 1 2\n1 2 1\n", "edges 2\n0 1 2\n0 1 2\n");
        assert!(from_text(&dup).is_err());

        assert!(from_text("hello\n").is_err());
        assert!(from_text(&format!("{text}extra\n")).is_err());
    }
}
