//! Text interchange formats: graph6, plain edge lists and 0/1 matrices.

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

/// Parses one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end();
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if body.is_empty() {
        return Err(Error::parse(base, "empty graph6 input"));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }

    let (n, mut pos) = if body[0] != 126 {
        ((body[0] - BIAS) as usize, 1)
    } else if body.len() >= 2 && body[1] == 126 {
        if body.len() < 8 {
            return Err(Error::parse(base + body.len(), "truncated 8-byte order header"));
        }
        (read_sextets(&body[2..8]), 8)
    } else {
        if body.len() < 4 {
            return Err(Error::parse(base + body.len(), "truncated 4-byte order header"));
        }
        (read_sextets(&body[1..4]), 4)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let bytes = bits.div_ceil(6);
    let payload_end = pos + bytes;
    if body.len() < payload_end {
        return Err(Error::parse(
            base + body.len(),
            format!("truncated payload: expected {bytes} data bytes, found {}", body.len() - pos),
        ));
    }
    if body.len() > payload_end {
        return Err(Error::parse(base + payload_end, "trailing garbage after graph6 payload"));
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            if bit == bits {
                break 'outer;
            }
            let byte = body[pos + bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    pos = payload_end;
    debug_assert_eq!(pos, body.len());
    Graph::from_edges(n, &edges)
}

fn read_sextets(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize)
}

/// Emits the graph6 encoding of `g` (no header, no newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Parses a whitespace separated `u v` edge list (0-indexed, `#` comments).
/// The order is one more than the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (line, content) in content_lines(text) {
        let fields: Vec<_> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::line(line, format!("expected `u v`, found {content:?}")));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::line(line, format!("not a vertex index: {s:?}")))
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(Error::line(line, format!("self-loop at {u}")));
        }
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    if n == 0 {
        return Err(Error::line(0, "edge list has no edges"));
    }
    Graph::from_edges(n, &edges)
}

pub fn emit_edge_list(g: &Graph) -> String {
    g.edges().map(|(u, v)| format!("{u} {v}\n")).collect()
}

/// Parses a square 0/1 matrix written one row per line.
pub fn parse_binary_matrix(text: &str) -> Result<Vec<Vec<bool>>> {
    let mut rows = Vec::new();
    for (line, content) in content_lines(text) {
        let row = content
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::line(line, format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            let first: &Vec<bool> = first;
            if first.len() != row.len() {
                return Err(Error::line(line, format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::line(0, "matrix has no rows"));
    }
    if rows.len() != rows[0].len() {
        return Err(Error::line(0, format!("matrix is {}x{}, expected square", rows.len(), rows[0].len())));
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Graph6,
    EdgeList,
    Matrix,
}

/// Guesses the format of a graph file: a square block of 0/1 rows is a
/// biadjacency matrix, lines of two integers an edge list, anything else
/// graph6.
pub fn detect_kind(text: &str) -> InputKind {
    let lines: Vec<&str> = content_lines(text).map(|(_, l)| l).collect();
    let is_matrix = !lines.is_empty()
        && lines.iter().all(|l| l.chars().all(|c| c == '0' || c == '1'))
        && lines.iter().all(|l| l.len() == lines.len());
    if is_matrix {
        InputKind::Matrix
    } else if !lines.is_empty()
        && lines.iter().all(|l| {
            let f: Vec<_> = l.split_whitespace().collect();
            f.len() == 2 && f.iter().all(|x| x.parse::<usize>().is_ok())
        })
    {
        InputKind::EdgeList
    } else {
        InputKind::Graph6
    }
}
