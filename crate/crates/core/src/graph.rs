//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices, stored as
//! one `u64` neighbor bitset per vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported vertex count (short-form graph6 limit).
pub const MAX_VERTICES: usize = 62;

/// Vertex set over `0..n`, bit `i` set iff vertex `i` is a member.
pub type VertexSet = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {n} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices { n: usize },
    #[error("edge endpoint {vertex} out of range for a graph on {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what}: n = {n} exceeds the configured limit {limit}")]
    LimitExceeded { what: &'static str, n: usize, limit: usize },
    #[error("malformed edge list: {0}")]
    EdgeListSyntax(String),
}

/// An undirected edge `{u, v}` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge with endpoints in normalized order.
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = full_set(n) & !(1 << v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edge_list(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Graph::from_edge_list(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// `K_{a,b}` with the `a` side numbered first.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let pairs = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)));
        Graph::from_edge_list(a + b, pairs)
    }

    /// Inserts `{a, b}`, rejecting loops, duplicates and bad endpoints.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        for x in [a, b] {
            if x >= self.n {
                return Err(GraphError::EndpointOutOfRange { vertex: x, n: self.n });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.has_edge(a, b) {
            let e = Edge::new(a, b);
            return Err(GraphError::DuplicateEdge(e.u, e.v));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in members(self.adj[u] & !((2u64 << u) - 1)) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        full_set(self.n)
    }

    /// Connected and nonempty.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let all = self.vertex_set();
        let mut seen: VertexSet = 1;
        let mut frontier: VertexSet = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    pub fn ensure_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Subgraph induced by `keep`, renumbered in increasing id order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let kept: Vec<usize> = members(keep & self.vertex_set()).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in kept.iter().enumerate() {
            index[v] = i;
        }
        let adj = kept.iter().map(|&v| members(self.adj[v] & keep).fold(0, |acc, w| acc | 1 << index[w])).collect();
        Graph { n: kept.len(), adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0; self.n];
        for e in self.edges() {
            adj[perm[e.u]] |= 1 << perm[e.v];
            adj[perm[e.v]] |= 1 << perm[e.u];
        }
        Graph { n: self.n, adj }
    }

    /// Renders the "n m" header followed by one "u v" line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for e in edges {
            s.push_str(&format!("{} {}\n", e.u, e.v));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>().map_err(|_| GraphError::EdgeListSyntax(format!("not a nonnegative integer: {t:?}")))
        });
        let mut next =
            |what: &str| tokens.next().unwrap_or_else(|| Err(GraphError::EdgeListSyntax(format!("missing {what}"))));
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut g = Graph::empty(n)?;
        for _ in 0..m {
            let a = next("edge endpoint")?;
            let b = next("edge endpoint")?;
            g.add_edge(a, b)?;
        }
        if tokens.next().is_some() {
            return Err(GraphError::EdgeListSyntax("trailing data after last edge".into()));
        }
        Ok(g)
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse_edge_list(s)
    }
}

/// Set `{0, .., n-1}`.
#[inline]
pub fn full_set(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the members of a bitset in increasing order.
#[inline]
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

pub fn set_from<I: IntoIterator<Item = usize>>(ids: I) -> VertexSet {
    ids.into_iter().fold(0, |acc, v| acc | 1 << v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_three() {
        let g = Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.neighbors(1), 0b101);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edge_list(1, []).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn k4_from_all_pairs() {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = Graph::from_edge_list(4, pairs).unwrap();
        assert!((0..4).all(|v| g.degree(v) == 3));
        assert_eq!(g, Graph::complete(4).unwrap());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edge_list(3, [(0, 3)]), Err(GraphError::EndpointOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edge_list(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edge_list(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::empty(63), Err(GraphError::TooManyVertices { n: 63 }));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(5).unwrap().is_connected());
        assert!(!Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(!Graph::empty(0).unwrap().is_connected());
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let text = g.to_edge_list();
        assert!(text.starts_with("5 5\n"));
        assert_eq!(text.parse::<Graph>().unwrap(), g);
        assert!(matches!("3 2\n0 1\n".parse::<Graph>(), Err(GraphError::EdgeListSyntax(_))));
    }

    #[test]
    fn induced_renumbers() {
        let g = Graph::path(5).unwrap();
        let h = g.induced(0b11100);
        assert_eq!(h, Graph::path(3).unwrap());
    }
}
