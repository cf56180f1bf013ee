//! The plain-text edge-list interchange format:
//!
//! ```text
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```

use std::collections::HashSet;

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = fields
            .next()
            .ok_or_else(|| err(line_no, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| err(line_no, format!("{what} {tok:?} is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(err(line_no, "expected exactly two fields"));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_no, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let (n, m) = two_numbers(header_no, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    let mut last_line = header_no;
    for (line_no, line) in lines {
        if edges.len() == m {
            return Err(err(line_no, format!("more than the declared {m} edges")));
        }
        let (u, v) = two_numbers(line_no, line)?;
        if u >= v {
            return Err(err(line_no, format!("edge {u} {v} must satisfy u < v")));
        }
        if v >= n {
            return Err(err(line_no, format!("vertex {v} out of range for n = {n}")));
        }
        if !seen.insert((u, v)) {
            return Err(err(line_no, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
        last_line = line_no;
    }
    if edges.len() != m {
        return Err(err(
            last_line + 1,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges).map_err(|e| err(0, e.to_string()))
}

/// Canonical text: header, then edges in lexicographic order, one per line.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
