//! Plain-text and JSON graph files.
//!
//! Text: a header line `n e` (or `l r e` for bipartite input) followed by one
//! `u v` line per edge. JSON: `{"n":..,"edges":[[u,v],..]}` or
//! `{"l":..,"r":..,"edges":[[i,j],..]}`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphInput {
    Graph(Graph),
    Bipartite(BipartiteGraph),
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad number {t:?}")))
        })
        .collect()
}

fn edge_lines(lines: &[(usize, &str)], expected: usize) -> Result<Vec<(usize, usize)>> {
    if lines.len() != expected {
        return Err(Error::Parse(format!(
            "header promises {expected} edges, found {}",
            lines.len()
        )));
    }
    lines
        .iter()
        .map(|&(no, l)| match numbers(l, no)?.as_slice() {
            [u, v] => Ok((*u, *v)),
            _ => Err(Error::Parse(format!("line {no}: expected two vertices"))),
        })
        .collect()
}

/// Parses either text format; the header width decides which.
pub fn parse_text(s: &str) -> Result<GraphInput> {
    let lines: Vec<(usize, &str)> = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let Some(&(no, header)) = lines.first() else {
        return Err(Error::Parse("empty input".into()));
    };
    match numbers(header, no)?.as_slice() {
        [n, e] => Ok(GraphInput::Graph(Graph::from_edges(
            *n,
            &edge_lines(&lines[1..], *e)?,
        )?)),
        [l, r, e] => Ok(GraphInput::Bipartite(BipartiteGraph::from_edges(
            *l,
            *r,
            &edge_lines(&lines[1..], *e)?,
        )?)),
        _ => Err(Error::Parse(format!(
            "line {no}: header must be `n e` or `l r e`"
        ))),
    }
}

pub fn parse_json(s: &str) -> Result<GraphInput> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let bad = |e: serde_json::Error| Error::Parse(e.to_string());
    if v.get("n").is_some() {
        Ok(GraphInput::Graph(serde_json::from_value(v).map_err(bad)?))
    } else {
        Ok(GraphInput::Bipartite(
            serde_json::from_value(v).map_err(bad)?,
        ))
    }
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_any(s: &str) -> Result<GraphInput> {
    if s.trim_start().starts_with('{') {
        parse_json(s)
    } else {
        parse_text(s)
    }
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn bipartite_to_text(b: &BipartiteGraph) -> String {
    let mut out = format!("{} {} {}\n", b.left(), b.right(), b.edge_count());
    for (i, j) in b.edges() {
        writeln!(out, "{i} {j}").unwrap();
    }
    out
}

impl GraphInput {
    pub fn to_text(&self) -> String {
        match self {
            GraphInput::Graph(g) => graph_to_text(g),
            GraphInput::Bipartite(b) => bipartite_to_text(b),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            GraphInput::Graph(g) => serde_json::to_string(g),
            GraphInput::Bipartite(b) => serde_json::to_string(b),
        }
        .expect("graphs serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{lex_bipartite, lex_graph};

    #[test]
    fn text_round_trip() {
        let g = lex_graph(7, 8).unwrap();
        let t = graph_to_text(&g);
        assert!(t.starts_with("7 8\n1 2\n"));
        assert_eq!(parse_text(&t).unwrap(), GraphInput::Graph(g));

        let b = lex_bipartite(2, 4, 5).unwrap();
        let t = bipartite_to_text(&b);
        assert!(t.starts_with("2 4 5\n"));
        assert_eq!(parse_any(&t).unwrap(), GraphInput::Bipartite(b));
    }

    #[test]
    fn json_round_trip() {
        let g = GraphInput::Graph(lex_graph(5, 4).unwrap());
        assert_eq!(parse_any(&g.to_json()).unwrap(), g);
        let b = GraphInput::Bipartite(lex_bipartite(3, 3, 4).unwrap());
        assert_eq!(parse_any(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_text("").is_err());
        assert!(parse_text("3 2\n1 2\n").is_err());
        assert!(parse_text("3 1\n1 1\n").is_err());
        assert!(parse_text("3 1\n1 x\n").is_err());
        assert!(parse_text("1 2 3 4\n").is_err());
        assert!(parse_any("{\"n\": 3, \"edges\": [[1, 4]]}").is_err());
    }
}
