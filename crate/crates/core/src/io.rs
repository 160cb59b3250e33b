//! Plain-text graph files.
//!
//! ```text
//! # comment
//! nodes 3
//! 0 1 1.0
//! 1 2 -0.25
//! ```
//!
//! The first non-comment line declares the node count; every following line
//! is one edge `u v w`. File order defines edge indices.

use std::fmt::Write as _;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    let mut node_count: Option<usize> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match node_count {
            None => {
                if fields.len() != 2 || fields[0] != "nodes" {
                    return Err(parse_err(lineno, format!("expected `nodes N`, found `{line}`")));
                }
                let n = fields[1]
                    .parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad node count `{}`: {e}", fields[1])))?;
                node_count = Some(n);
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(parse_err(lineno, format!("expected `u v w`, found `{line}`")));
                }
                let u = fields[0]
                    .parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad node `{}`: {e}", fields[0])))?;
                let v = fields[1]
                    .parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad node `{}`: {e}", fields[1])))?;
                let w = fields[2]
                    .parse::<f64>()
                    .map_err(|e| parse_err(lineno, format!("bad weight `{}`: {e}", fields[2])))?;
                edges.push((u, v, w));
                edge_lines.push(lineno);
            }
        }
    }

    let n = node_count.ok_or_else(|| parse_err(0, "missing `nodes N` line"))?;
    SignedGraph::new(n, &edges).map_err(|e| {
        let line = match e {
            Error::ZeroWeight { edge }
            | Error::SelfLoop { edge, .. }
            | Error::NodeOutOfRange { edge, .. }
            | Error::NonFiniteWeight { edge, .. } => edge_lines[edge],
            _ => 0,
        };
        parse_err(line, e.to_string())
    })
}

pub fn read_graph(path: &std::path::Path) -> Result<SignedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Canonical text form. Weights use the shortest decimal that round-trips
/// to the same `f64`.
pub fn write_graph(g: &SignedGraph) -> String {
    let mut s = format!("nodes {}\n", g.node_count());
    for e in g.edges() {
        let _ = writeln!(s, "{} {} {:?}", e.tail, e.head, e.weight);
    }
    s
}

/// Whitespace-separated initial state; `#` comments allowed.
pub fn parse_vector(text: &str) -> Result<DVector<f64>> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        for tok in strip_comment(raw).split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let x = tok
                .parse::<f64>()
                .map_err(|e| parse_err(i + 1, format!("bad value `{tok}`: {e}")))?;
            values.push(x);
        }
    }
    Ok(DVector::from_vec(values))
}
