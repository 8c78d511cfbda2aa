//! graph6 and plain edge-list formats.
//!
//! graph6 follows McKay's layout: a length field (one byte for `n <= 62`,
//! `~` plus three bytes up to 258047, `~~` plus six bytes beyond), then the
//! upper triangle of the adjacency matrix in column order
//! `(0,1),(0,2),(1,2),(0,3),...`, packed six bits per byte, each byte offset
//! by 63, zero padded.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

const HEADER: &str = ">>graph6<<";
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed length field at byte {offset}")]
    MalformedLength { offset: usize },
    #[error("byte {byte:#04x} out of graph6 range at offset {offset}")]
    ByteOutOfRange { byte: u8, offset: usize },
    #[error("truncated edge data: expected {expected} bytes after offset {offset}, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("trailing garbage starting at byte {offset}")]
    TrailingGarbage { offset: usize },
    #[error("nonzero padding bits in byte at offset {offset}")]
    NonzeroPadding { offset: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: expected a nonnegative integer, found {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected two vertex labels, found {count}")]
    WrongArity { line: usize, count: usize },
}

fn sixbits(byte: u8, offset: usize) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::ByteOutOfRange { byte, offset })
    }
}

/// Parses one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let trimmed_start = text.len() - text.trim_start().len();
    let mut base = trimmed_start;
    let mut body = text.trim();
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }

    let (n, mut pos) = decode_length(bytes, base)?;
    let bit_count = n * n.saturating_sub(1) / 2;
    let data_len = bit_count.div_ceil(6);
    let available = bytes.len() - pos;
    if available < data_len {
        return Err(Graph6Error::Truncated {
            offset: base + pos,
            expected: data_len,
            found: available,
        });
    }
    if available > data_len {
        return Err(Graph6Error::TrailingGarbage {
            offset: base + pos + data_len,
        });
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    let (mut i, mut j) = (0usize, 1usize);
    for _ in 0..data_len {
        let value = sixbits(bytes[pos], base + pos)?;
        for shift in (0..6).rev() {
            let set = value >> shift & 1 == 1;
            if bit < bit_count {
                if set {
                    edges.push((i, j));
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if set {
                return Err(Graph6Error::NonzeroPadding { offset: base + pos });
            }
            bit += 1;
        }
        pos += 1;
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 decoding yields valid upper-triangle edges"))
}

fn decode_length(bytes: &[u8], base: usize) -> Result<(usize, usize), Graph6Error> {
    let read = |from: usize, count: usize| -> Result<usize, Graph6Error> {
        if bytes.len() < from + count {
            return Err(Graph6Error::MalformedLength { offset: base + bytes.len() });
        }
        let mut n = 0usize;
        for (k, &b) in bytes[from..from + count].iter().enumerate() {
            n = n << 6 | sixbits(b, base + from + k)? as usize;
        }
        Ok(n)
    };
    if bytes[0] != b'~' {
        return Ok((sixbits(bytes[0], base)? as usize, 1));
    }
    if bytes.get(1) == Some(&b'~') {
        Ok((read(2, 6)?, 8))
    } else {
        let n = read(1, 3)?;
        Ok((n, 4))
    }
}

/// Canonical graph6 encoding (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= SHORT_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_MAX {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(b"~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses whitespace-separated `u v` lines. Blank lines and `#` comments are
/// ignored; `n` is one more than the largest label.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(EdgeListError::WrongArity {
                line: line_no,
                count: tokens.len(),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens) {
            *slot = tok.parse().map_err(|_| EdgeListError::BadToken {
                line: line_no,
                token: tok.to_string(),
            })?;
        }
        if ends[0] == ends[1] {
            return Err(EdgeListError::SelfLoop {
                line: line_no,
                vertex: ends[0],
            });
        }
        n = n.max(ends[0] + 1).max(ends[1] + 1);
        edges.push((ends[0], ends[1]));
    }
    Graph::from_edges(n, edges).map_err(|e| match e {
        GraphError::SelfLoop(v) => EdgeListError::SelfLoop { line: 0, vertex: v },
        GraphError::VertexOutOfRange { .. } => unreachable!("n covers every label"),
    })
}

/// Renders `u v` lines, one per edge.
pub fn encode_edge_list(g: &Graph) -> String {
    g.edges().iter().map(|(u, v)| format!("{u} {v}\n")).collect()
}
