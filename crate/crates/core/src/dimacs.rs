//! DIMACS `.col` reader and writer.
//!
//! Lines are `c <comment>`, `p edge <n> <m>`, `e <u> <v>` with 1-based
//! vertex indices. Loops are encoded as `e u u` and accepted only when a
//! `c allow_loops` comment precedes the header. The writer emits edges in
//! lexicographic order, so write-then-read round-trips to equal adjacency.

use crate::graph::{Graph, GraphBuilder};
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: malformed header: {text}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: expected `e <u> <v>`, got: {text}")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { line: usize, index: i64, n: usize },
    #[error("line {line}: loop `e {u} {u}` without a preceding `c allow_loops` comment")]
    UnexpectedLoop { line: usize, u: usize },
    #[error("line {line}: edge before `p edge` header")]
    EdgeBeforeHeader { line: usize },
    #[error("missing `p edge` header")]
    MissingHeader,
}

pub fn read<R: Read>(reader: R) -> Result<Graph, DimacsError> {
    let mut allow_loops = false;
    let mut builder: Option<GraphBuilder> = None;
    let mut n = 0usize;
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let mut it = text.split_ascii_whitespace();
        match it.next() {
            Some("c") => {
                if builder.is_none() && it.next() == Some("allow_loops") {
                    allow_loops = true;
                }
            }
            Some("p") => {
                let bad = || DimacsError::MalformedHeader {
                    line: lineno,
                    text: text.to_string(),
                };
                if it.next() != Some("edge") {
                    return Err(bad());
                }
                n = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                let _m: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                if it.next().is_some() {
                    return Err(bad());
                }
                let mut b = GraphBuilder::new(n);
                if allow_loops {
                    b = b.allow_loops();
                }
                builder = Some(b);
            }
            Some("e") => {
                let b = builder
                    .as_mut()
                    .ok_or(DimacsError::EdgeBeforeHeader { line: lineno })?;
                let mut idx = || -> Result<usize, DimacsError> {
                    let raw: i64 = it
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| DimacsError::MalformedEdge {
                            line: lineno,
                            text: text.to_string(),
                        })?;
                    if raw < 1 || raw as usize > n {
                        return Err(DimacsError::VertexOutOfRange {
                            line: lineno,
                            index: raw,
                            n,
                        });
                    }
                    Ok(raw as usize - 1)
                };
                let u = idx()?;
                let v = idx()?;
                if u == v && !allow_loops {
                    return Err(DimacsError::UnexpectedLoop {
                        line: lineno,
                        u: u + 1,
                    });
                }
                b.add_edge(u, v);
            }
            _ => {
                return Err(DimacsError::MalformedEdge {
                    line: lineno,
                    text: text.to_string(),
                })
            }
        }
    }
    builder.map(GraphBuilder::build).ok_or(DimacsError::MissingHeader)
}

pub fn read_path(path: impl AsRef<Path>) -> Result<Graph, DimacsError> {
    read(std::fs::File::open(path)?)
}

pub fn write<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    if g.allows_loops() {
        writeln!(w, "c allow_loops")?;
    }
    writeln!(w, "p edge {} {}", g.n(), g.num_edges())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn write_path(g: &Graph, path: impl AsRef<Path>) -> io::Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write(g, &mut f)?;
    f.flush()
}

pub fn to_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write(g, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}
