//! Simple undirected graphs over dense integer vertex ids, plus the graph6
//! text encoding.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(Vertex, usize),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph6 parse error at byte {offset}: {message}")]
pub struct Graph6Error {
    pub offset: usize,
    pub message: String,
}

impl Graph6Error {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        Graph6Error { offset, message: message.into() }
    }
}

/// A simple undirected graph. Neighbor sets are kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange(w, n));
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if !self.adj[u].insert(v) {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
        self.adj[v].insert(u);
        Ok(())
    }

    /// Adds `uv` if absent; returns whether the edge is new.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "loop at {u}");
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Induced subgraph on `keep` (in the given order). Returns the subgraph and
    /// the map from new ids to old ids.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        (g, keep.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&BTreeSet::new())
    }

    /// Connected components of `G - removed`.
    pub fn components_avoiding(&self, removed: &BTreeSet<Vertex>) -> Vec<Vec<Vertex>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || removed.contains(&s) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] && !removed.contains(&w) {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.components().len() == 1
    }

    /// Articulation points in increasing order.
    pub fn cut_vertices(&self) -> Vec<Vertex> {
        let n = self.adj.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // iterative DFS: (vertex, parent, neighbor list, next index)
            let mut stack: Vec<(Vertex, Vertex, Vec<Vertex>, usize)> = Vec::new();
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, usize::MAX, self.adj[root].iter().copied().collect(), 0));
            let mut root_children = 0;
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                if top.3 < top.2.len() {
                    let w = top.2[top.3];
                    top.3 += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, self.adj[w].iter().copied().collect(), 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = stack.last() {
                        let p = p.0;
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Shortest path (by edge count) from `from` to `to` using only vertices
    /// accepted by `allowed` (endpoints are always allowed).
    pub fn shortest_path(
        &self,
        from: Vertex,
        to: Vertex,
        allowed: impl Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        let n = self.adj.len();
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[u] {
                if prev[w] == usize::MAX && (w == to || allowed(w)) {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn to_graph6(&self) -> String {
        emit_graph6(self)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.vertex_count(), self.edges())
    }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Parses one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let trimmed = text.trim_end_matches(['\n', '\r', ' ', '\t']);
    let (base, body) = match trimmed.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::new(base + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    if body.is_empty() {
        return Err(Graph6Error::new(base, "missing vertex count"));
    }
    let (n, header_len) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.len() >= 2 && body[1] == 126 {
        if body.len() < 8 {
            return Err(Graph6Error::new(base + body.len(), "truncated 36-bit vertex count"));
        }
        let mut n = 0usize;
        for &b in &body[2..8] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 8)
    } else {
        if body.len() < 4 {
            return Err(Graph6Error::new(base + body.len(), "truncated 18-bit vertex count"));
        }
        let mut n = 0usize;
        for &b in &body[1..4] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != expected {
        let offset = base + header_len + data.len().min(expected);
        return Err(Graph6Error::new(
            offset,
            format!("expected {expected} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::new(base + header_len + expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn d_question_brace_is_a_star_at_four() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(g.to_graph6(), "D?{");
    }

    #[test]
    fn k4_encoding() {
        // 6 bits, all set: 63 + 63 = '~'
        assert_eq!(complete(4).to_graph6(), "C~");
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert_eq!(g.to_graph6(), "@");
    }

    #[test]
    fn header_and_newline_accepted() {
        let g = parse_graph6(">>graph6<<D?{\n").unwrap();
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn malformed_codes_name_offset() {
        let err = parse_graph6("D?").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse_graph6("D?{{").unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_graph6("D? ").unwrap_err();
        assert_eq!(err.offset, 2);
        // K2 has one bit: "A_" sets it, "A`" sets a padding bit too.
        assert!(parse_graph6("A_").is_ok());
        let err = parse_graph6("A`").unwrap_err();
        assert_eq!(err.offset, 1);
        assert_eq!(parse_graph6("").unwrap_err().offset, 0);
    }

    #[test]
    fn long_vertex_count() {
        let g = Graph::new(100);
        let code = g.to_graph6();
        assert!(code.starts_with('~'));
        assert_eq!(parse_graph6(&code).unwrap().vertex_count(), 100);
    }

    #[test]
    fn cut_vertices_of_bowtie() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(g.cut_vertices(), vec![2]);
        assert!(complete(4).cut_vertices().is_empty());
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.cut_vertices(), vec![1]);
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(GraphError::ParallelEdge(0, 1)));
        assert_eq!(Graph::from_edges(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange(2, 2)));
    }
}
