//! Plain-text edge lists.
//!
//! One undirected edge per line as two whitespace-separated vertex ids.
//! Blank lines and lines starting with `#` are skipped. An optional header
//! line `n <count>` fixes the vertex count; without it the count is one more
//! than the largest id seen. Duplicate edges (in either orientation) are
//! dropped and counted.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use degmom_core::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Open {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Read(#[from] std::io::Error),
}

/// What the parser saw besides the graph itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct ParseReport {
    pub lines: usize,
    pub edge_lines: usize,
    pub duplicates_dropped: usize,
    pub isolated: usize,
    pub header_n: Option<usize>,
}

fn malformed(line: usize, reason: impl Into<String>) -> IoError {
    IoError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize, IoError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("`{tok}` is not a vertex id")))
}

pub fn parse_edge_list<R: Read>(reader: R) -> Result<(Graph, ParseReport), IoError> {
    let mut report = ParseReport::default();
    let mut edges = Vec::new();
    // Line of each edge, to point errors at the offending input.
    let mut origin = Vec::new();
    let mut max_id: Option<usize> = None;

    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        report.lines += 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks[0] == "n" {
            if toks.len() != 2 {
                return Err(malformed(lineno, "header must be `n <count>`"));
            }
            if report.header_n.is_some() {
                return Err(malformed(lineno, "duplicate `n` header"));
            }
            if report.edge_lines > 0 {
                return Err(malformed(lineno, "`n` header must precede the edges"));
            }
            report.header_n = Some(parse_id(toks[1], lineno)?);
            continue;
        }
        if toks.len() != 2 {
            return Err(malformed(
                lineno,
                format!("expected two vertex ids, found {} fields", toks.len()),
            ));
        }
        let (u, v) = (parse_id(toks[0], lineno)?, parse_id(toks[1], lineno)?);
        if u == v {
            return Err(IoError::Graph {
                line: lineno,
                source: GraphError::SelfLoop { vertex: u },
            });
        }
        if let Some(n) = report.header_n {
            let bad = u.max(v);
            if bad >= n {
                return Err(IoError::Graph {
                    line: lineno,
                    source: GraphError::VertexOutOfRange { vertex: bad, n },
                });
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
        origin.push(lineno);
        report.edge_lines += 1;
    }

    let n = report
        .header_n
        .unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    let (graph, summary) =
        Graph::from_edges_counted(n, edges).map_err(|source| IoError::Graph {
            line: origin.first().copied().unwrap_or(0),
            source,
        })?;
    report.duplicates_dropped = summary.duplicates;
    report.isolated = graph.isolated_count();
    Ok((graph, report))
}

pub fn load_edge_list(path: &Path) -> Result<(Graph, ParseReport), IoError> {
    let file = File::open(path).map_err(|source| IoError::Open {
        path: path.to_owned(),
        source,
    })?;
    parse_edge_list(file)
}

/// Writes the `n` header and each edge once, smaller id first.
pub fn write_edge_list<W: Write>(g: &Graph, out: W) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "n {}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn save_edge_list(g: &Graph, path: &Path) -> Result<(), IoError> {
    let file = File::create(path).map_err(|source| IoError::Open {
        path: path.to_owned(),
        source,
    })?;
    write_edge_list(g, file)?;
    Ok(())
}
