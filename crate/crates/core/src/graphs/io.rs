//! Plain-text graph files.
//!
//! ```text
//! n d
//! parts: 0 1 0 1 ...      (optional)
//! u v                     (one edge per line, 0-indexed, u < v)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use super::RegularGraph;
use crate::error::GraphError;

pub fn write_graph(graph: &RegularGraph) -> String {
    let mut out = String::with_capacity(16 + 12 * graph.edge_count());
    let _ = writeln!(out, "{} {}", graph.n(), graph.degree());
    if let Some(parts) = graph.parts() {
        out.push_str("parts:");
        for p in parts {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<RegularGraph, GraphError> {
    let err = |line: usize, msg: &str| GraphError::Parse { line, msg: msg.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let header: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(line_no, "header must be `n d`")))
        .collect::<Result<_, _>>()?;
    let [n, d] = header[..] else {
        return Err(err(line_no, "header must be `n d`"));
    };

    let mut parts = None;
    let mut edges = Vec::with_capacity(n * d / 2);
    for (line_no, line) in lines {
        if let Some(rest) = line.strip_prefix("parts:") {
            if parts.is_some() || !edges.is_empty() {
                return Err(err(line_no, "parts line must directly follow the header"));
            }
            let labels: Vec<u8> = if rest.trim().contains(char::is_whitespace) {
                rest.split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(line_no, "part labels must be 0/1")))
                    .collect::<Result<_, _>>()?
            } else {
                rest.trim()
                    .chars()
                    .map(|c| c.to_digit(2).map(|b| b as u8).ok_or_else(|| err(line_no, "part labels must be 0/1")))
                    .collect::<Result<_, _>>()?
            };
            parts = Some(labels);
            continue;
        }
        let mut tokens = line.split_whitespace().map(|t| t.parse::<u32>());
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(err(line_no, "edge lines must be `u v`")),
        }
    }
    let graph = match parts {
        Some(parts) => RegularGraph::from_edges_with_parts(n, &edges, parts)?,
        None => RegularGraph::from_edges(n, &edges)?,
    };
    if graph.degree() != d {
        return Err(GraphError::NonRegular {
            vertex: 0,
            found: graph.degree(),
            expected: d,
        });
    }
    Ok(graph)
}
