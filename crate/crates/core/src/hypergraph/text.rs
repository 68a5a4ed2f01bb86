//! Plain-text hypergraph format.
//!
//! ```text
//! # optional comment lines
//! n E
//! v v v ...      (E lines, one edge each)
//! ```
//!
//! Edge lines list vertex indices separated by whitespace. Serialization is
//! canonical: vertices ascending within an edge, edges in lexicographic order.

use std::fmt::Write as _;

use super::Hypergraph;
use crate::error::{Error, Result};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'));

    let (header_line, header) = loop {
        match lines.next() {
            None => return Err(syntax(0, "missing header line `n E`")),
            Some((_, "")) => continue,
            Some(found) => break found,
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(syntax(header_line, "header must be `n E`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| syntax(header_line, format!("bad vertex count {:?}", fields[0])))?;
    let edge_count: usize = fields[1]
        .parse()
        .map_err(|_| syntax(header_line, format!("bad edge count {:?}", fields[1])))?;

    let mut edges = Vec::with_capacity(edge_count);
    let mut last_line = header_line;
    while edges.len() < edge_count {
        let Some((line_no, line)) = lines.next() else {
            return Err(syntax(
                last_line,
                format!("expected {edge_count} edges, found {}", edges.len()),
            ));
        };
        last_line = line_no;
        if line.is_empty() {
            return Err(syntax(line_no, "empty edge"));
        }
        let mut edge = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| syntax(line_no, format!("bad vertex index {tok:?}")))?;
            if v >= n {
                return Err(syntax(
                    line_no,
                    format!("vertex index {v} out of range for {n} vertices"),
                ));
            }
            edge.push(v);
        }
        if edge.len() < 2 {
            return Err(syntax(line_no, "edge needs at least 2 vertices"));
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(syntax(line_no, "repeated vertex in edge"));
        }
        edges.push(sorted);
    }
    if let Some((line_no, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(syntax(
            line_no,
            format!("more edge lines than the declared {edge_count}"),
        ));
    }
    Hypergraph::with_repeats(n, edges)
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut edges: Vec<&Vec<usize>> = h.edges().iter().collect();
    edges.sort();
    let mut out = format!("{} {}\n", h.n(), edges.len());
    for e in edges {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}
