use std::fmt::Write as _;

use super::{Edge, Graph};
use crate::{Error, Result};

/// Edge-list text: a `n_vertices=<n>` header, then one `tail head` line per
/// edge in stored order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n_vertices={}\n", g.n_vertices());
    for e in g.edges() {
        writeln!(out, "{} {}", e.tail, e.head).expect("write to String");
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let n = header
        .strip_prefix("n_vertices=")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("bad edge-list header `{header}`")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace().map(str::parse::<usize>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(t)), Some(Ok(h)), None) => edges.push(Edge::new(t, h)),
            _ => return Err(Error::Parse(format!("bad edge line `{line}`"))),
        }
    }
    Graph::from_edges(n, edges)
}
