//! Plain-text graph and label formats.
//!
//! A graph file is a header line `nodes N edges E`, then `N` lines holding
//! one unsigned weight each, then `E` lines `i j`. Labels are written as one
//! `node label` line per node. Blank lines are ignored on input.

use std::fmt::Write as _;

use thiserror::Error;

use super::WeightedGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Graph(#[from] crate::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph<u64>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (no, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (nodes, edges) = match fields.as_slice() {
        ["nodes", n, "edges", e] => (
            n.parse::<usize>()
                .map_err(|_| syntax(no, "bad node count"))?,
            e.parse::<usize>()
                .map_err(|_| syntax(no, "bad edge count"))?,
        ),
        _ => return Err(syntax(no, "expected `nodes N edges E`")),
    };

    let mut weights = Vec::with_capacity(nodes);
    for _ in 0..nodes {
        let (no, l) = lines
            .next()
            .ok_or_else(|| syntax(no + 1, "missing weight line"))?;
        weights.push(l.parse::<u64>().map_err(|_| syntax(no, "bad weight"))?);
    }
    let mut pairs = Vec::with_capacity(edges);
    for _ in 0..edges {
        let (no, l) = lines
            .next()
            .ok_or_else(|| syntax(no + 1, "missing edge line"))?;
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => pairs.push((a, b)),
            _ => return Err(syntax(no, "expected `i j`")),
        }
    }
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "trailing content"));
    }
    Ok(WeightedGraph::new(weights, &pairs)?)
}

pub fn format_graph(graph: &WeightedGraph<u64>) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "nodes {} edges {}",
        graph.node_count(),
        graph.edge_count()
    )
    .unwrap();
    for w in graph.weights() {
        writeln!(out, "{w}").unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn format_labels(labels: &[u32]) -> String {
    let mut out = String::with_capacity(labels.len() * 6);
    for (node, label) in labels.iter().enumerate() {
        writeln!(out, "{node} {label}").unwrap();
    }
    out
}

pub fn parse_labels(text: &str) -> Result<Vec<u32>, ParseError> {
    let mut labels = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        let mut it = l.split_whitespace().map(str::parse::<u64>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(node)), Some(Ok(label)), None) if node as usize == labels.len() => {
                labels.push(u32::try_from(label).map_err(|_| syntax(i + 1, "label too large"))?)
            }
            _ => return Err(syntax(i + 1, "expected `node label` in node order")),
        }
    }
    Ok(labels)
}
