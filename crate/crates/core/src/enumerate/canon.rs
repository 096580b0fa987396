//! Canonical labeling for graphs on at most ten vertices.
//!
//! The vertex set is split into an ordered partition by iterated
//! neighbor-count refinement, starting from the degree partition. When the
//! partition stops splitting, every vertex of the first non-singleton cell
//! is individualized in turn, except that only one vertex of each twin
//! class is tried. The canonical form is the smallest adjacency code over
//! all leaves of that search tree. Refinement depends only on the
//! isomorphism type, so two graphs get the same form iff they are
//! isomorphic.

use std::fmt;

use serde::Serialize;

use crate::graph::{Graph, GraphError};

/// Largest `n` accepted by [`canonical_form`]; the code fits in 45 bits.
pub const CANON_MAX_VERTICES: usize = 10;

/// Upper-triangle adjacency bitstring of the canonically relabeled graph.
///
/// Pairs are read column by column (`(0,1), (0,2), (1,2), (0,3), ...`) with
/// the first pair in the most significant position, so comparing codes
/// compares bitstrings lexicographically. Forms order first by `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub n: u8,
    pub code: u64,
}

impl CanonicalForm {
    pub fn to_graph(self) -> Graph {
        let n = self.n as usize;
        let mut g = Graph::empty(n).expect("n within limit");
        let mut bit = n * n.saturating_sub(1) / 2;
        for j in 1..n {
            for i in 0..j {
                bit -= 1;
                if self.code >> bit & 1 == 1 {
                    g.add_edge(i, j).expect("each pair once");
                }
            }
        }
        g
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        let width = n * n.saturating_sub(1) / 2;
        if width == 0 {
            return write!(f, "{n}:");
        }
        write!(f, "{n}:{:0width$b}", self.code)
    }
}

/// Adjacency code of `g` with vertex `order[p]` placed at position `p`.
pub fn code_of(g: &Graph, order: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..order.len() {
        let row = g.neighbors(order[j]);
        for &vi in &order[..j] {
            code = code << 1 | (row >> vi & 1);
        }
    }
    code
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    canonical_labeling(g).map(|(form, _)| form)
}

/// The canonical form and one ordering of the vertices that produces it.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>), GraphError> {
    let n = g.n();
    if n > CANON_MAX_VERTICES {
        return Err(GraphError::LimitExceeded { what: "canonical form", n, limit: CANON_MAX_VERTICES });
    }
    let mut cells: Vec<Vec<usize>> = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    refine(g, &mut cells);
    let mut best: Option<(u64, Vec<usize>)> = None;
    search(g, cells, &mut best);
    let (code, order) = best.unwrap_or((0, Vec::new()));
    Ok((CanonicalForm { n: n as u8, code }, order))
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(u64, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let code = code_of(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // Swapping twins is an automorphism, so their subtrees coincide.
        if tried.iter().any(|&t| are_twins(g, t, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&x| x != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        refine(g, &mut next);
        search(g, next, best);
    }
}

fn are_twins(g: &Graph, a: usize, b: usize) -> bool {
    let mask = !(1u64 << a | 1u64 << b);
    g.neighbors(a) & mask == g.neighbors(b) & mask
}

/// Splits cells by neighbor counts into every cell until stable. Sub-cells
/// are ordered by their count signature, so the result is equivariant.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut split = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> =
                cell.iter().map(|&v| (masks.iter().map(|m| (g.neighbors(v) & m).count_ones()).collect(), v)).collect();
            keyed.sort();
            let start = next.len();
            for (i, (sig, v)) in keyed.iter().enumerate() {
                if i == 0 || *sig != keyed[i - 1].0 {
                    next.push(Vec::new());
                }
                next.last_mut().expect("pushed").push(*v);
            }
            split |= next.len() - start > 1;
        }
        *cells = next;
        if !split {
            return;
        }
    }
}
