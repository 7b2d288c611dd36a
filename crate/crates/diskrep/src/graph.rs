use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Panics on loops, duplicates or bad ids,
    /// which makes it suitable for generators that construct graphs themselves.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range");
            assert!(u != v, "self-loop on {u}");
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
            let len = list.len();
            list.dedup();
            assert_eq!(len, list.len(), "duplicate edge");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Text form accepted by [`parse_graph`]; the header keeps isolated vertices.
    pub fn serialize(&self) -> String {
        let mut out = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a nonnegative integer, found {tok:?}"),
    })
}

/// Parses the edge-list format: an optional `n <count>` header, then one
/// `u v` pair per line. `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    let mut saw_edge = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks[0] == "n" {
            if declared.is_some() || saw_edge {
                return Err(Error::Parse { line, msg: "header must come first and only once".into() });
            }
            if toks.len() != 2 {
                return Err(Error::Parse { line, msg: "header is `n <count>`".into() });
            }
            declared = Some(parse_id(toks[1], line)?);
            continue;
        }
        if toks.len() != 2 {
            return Err(Error::Parse { line, msg: format!("expected two ids, found {} tokens", toks.len()) });
        }
        let u = parse_id(toks[0], line)?;
        let v = parse_id(toks[1], line)?;
        if let Some(n) = declared {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::OutOfRange { line, id, n });
                }
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, v: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge { line, u, v });
        }
        saw_edge = true;
        edges.push((line, u, v));
    }

    let n = declared.unwrap_or_else(|| edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut g = Graph::new(n);
    for (_, u, v) in edges {
        g.adj[u].push(v);
        g.adj[v].push(u);
    }
    for list in &mut g.adj {
        list.sort_unstable();
    }
    Ok(g)
}
