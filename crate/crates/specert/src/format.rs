//! graph6 and plain edge-list formats.
//!
//! The edge list is a header line `n m` followed by `m` lines `u v` with
//! 0-indexed endpoints. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use specert_core::graph::{pair_count, pairs, Graph};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6: invalid byte 0x{byte:02x} at position {position}")]
    BadByte { position: usize, byte: u8 },
    #[error("graph6: expected {expected} bytes, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("graph6: padding bits set in the last byte at position {0}")]
    BadPadding(usize),
    #[error("graph6: empty input")]
    Empty,
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Some(Format::Graph6),
            "edge-list" | "edgelist" | "edges" => Some(Format::EdgeList),
            _ => None,
        }
    }
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut word = 0u8;
    let mut filled = 0;
    for (i, j) in pairs(n) {
        word = word << 1 | g.has_edge(i, j) as u8;
        filled += 1;
        if filled == 6 {
            out.push(word + 63);
            word = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (position, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(FormatError::BadByte { position, byte });
        }
    }
    let value = |range: std::ops::Range<usize>| -> Result<usize, FormatError> {
        if bytes.len() < range.end {
            return Err(FormatError::BadLength { expected: range.end, got: bytes.len() });
        }
        Ok(bytes[range].iter().fold(0, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        (value(1..4)?, 4)
    } else {
        (value(2..8)?, 8)
    };
    let bits = pair_count(n);
    let expected = start + bits.div_ceil(6);
    if bytes.len() != expected {
        return Err(FormatError::BadLength { expected, got: bytes.len() });
    }
    let mut g = Graph::empty(n);
    for (idx, (i, j)) in pairs(n).enumerate() {
        let byte = bytes[start + idx / 6] - 63;
        if byte >> (5 - idx % 6) & 1 == 1 {
            g.add_edge(i, j).expect("pair indices are in range");
        }
    }
    if !bits.is_multiple_of(6) {
        let last = bytes[expected - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(FormatError::BadPadding(expected - 1));
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let err = |message: String| FormatError::EdgeList { line, message };
    let mut it = text.split_whitespace();
    let mut next = |what| {
        it.next()
            .ok_or_else(|| err(format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|e| err(format!("bad {what}: {e}")))
    };
    let pair = (next("first value")?, next("second value")?);
    if it.next().is_some() {
        return Err(err("expected exactly two integers".into()));
    }
    Ok(pair)
}

pub fn from_edge_list(s: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(s);
    let (line, header) = lines.next().ok_or(FormatError::EdgeList { line: 1, message: "missing header".into() })?;
    let (n, m) = parse_pair(line, header)?;
    let mut g = Graph::empty(n);
    let mut count = 0;
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        g.add_edge(u, v).map_err(|e| FormatError::EdgeList { line, message: e.to_string() })?;
        count += 1;
    }
    if count != m {
        return Err(FormatError::EdgeList { line, message: format!("header announces {m} edges, found {count}") });
    }
    Ok(g)
}

/// Edge list when the first content line is two integers, graph6 otherwise.
pub fn detect(s: &str) -> Format {
    match content_lines(s).next() {
        Some((_, first)) => {
            let fields: Vec<&str> = first.split_whitespace().collect();
            if fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
                Format::EdgeList
            } else {
                Format::Graph6
            }
        }
        None => Format::Graph6,
    }
}

pub fn parse_graph(s: &str, format: Option<Format>) -> Result<Graph, FormatError> {
    match format.unwrap_or_else(|| detect(s)) {
        Format::Graph6 => from_graph6(s.trim()),
        Format::EdgeList => from_edge_list(s),
    }
}
