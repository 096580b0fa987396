//! Classical invariants: cliques, stars, balanced bicliques, degeneracy and
//! colorings.

use crate::graph::{members, Graph, GraphError, VertexSet};

pub const DEFAULT_CLIQUE_LIMIT: usize = 64;
pub const DEFAULT_BICLIQUE_LIMIT: usize = 24;
pub const DEFAULT_CHROMATIC_LIMIT: usize = 16;

fn check_limit(g: &Graph, what: &'static str, limit: usize) -> Result<(), GraphError> {
    if g.n() > limit {
        Err(GraphError::LimitExceeded { what, n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
///
/// Among maximum cliques the one found first in ascending branching order
/// is returned, so results are deterministic.
pub fn max_clique(g: &Graph) -> Result<Vec<usize>, GraphError> {
    max_clique_with_limit(g, DEFAULT_CLIQUE_LIMIT)
}

pub fn max_clique_with_limit(g: &Graph, limit: usize) -> Result<Vec<usize>, GraphError> {
    check_limit(g, "max_clique", limit)?;
    let mut best = 0;
    expand_clique(g, 0, g.vertex_set(), &mut best);
    Ok(members(best).collect())
}

fn color_bound(g: &Graph, mut p: VertexSet) -> u32 {
    let mut colors = 0;
    while p != 0 {
        colors += 1;
        let mut avail = p;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !g.neighbors(v);
            p &= !(1 << v);
        }
    }
    colors
}

fn expand_clique(g: &Graph, r: VertexSet, mut p: VertexSet, best: &mut VertexSet) {
    if p == 0 {
        if r.count_ones() > best.count_ones() {
            *best = r;
        }
        return;
    }
    if r.count_ones() + color_bound(g, p) <= best.count_ones() {
        return;
    }
    while p != 0 {
        if r.count_ones() + p.count_ones() <= best.count_ones() {
            return;
        }
        let v = p.trailing_zeros() as usize;
        expand_clique(g, r | 1 << v, p & g.neighbors(v), best);
        p &= !(1 << v);
    }
}

/// Largest `n` with `K_{1,n}` as a subgraph, i.e. the maximum degree.
pub fn max_star(g: &Graph) -> usize {
    g.max_degree()
}

/// Largest `m ≤ cap` such that `K_{m,m}` is a (not necessarily induced)
/// subgraph.
pub fn max_balanced_biclique(g: &Graph, cap: usize) -> Result<usize, GraphError> {
    max_balanced_biclique_with_limit(g, cap, DEFAULT_BICLIQUE_LIMIT)
}

pub fn max_balanced_biclique_with_limit(g: &Graph, cap: usize, limit: usize) -> Result<usize, GraphError> {
    check_limit(g, "max_balanced_biclique", limit)?;
    let mut best = 0;
    if cap == 0 || g.edge_count() == 0 {
        return Ok(0);
    }
    // Candidates in decreasing degree order; ties by id.
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    grow_left(g, &order, 0, 0, g.vertex_set(), cap, &mut best);
    Ok(best)
}

/// `left` is the chosen side, `common` its common neighborhood.
fn grow_left(
    g: &Graph,
    order: &[usize],
    start: usize,
    left_size: usize,
    common: VertexSet,
    cap: usize,
    best: &mut usize,
) {
    let here = left_size.min(common.count_ones() as usize);
    if here > *best {
        *best = here.min(cap);
    }
    if *best >= cap {
        return;
    }
    for (i, &v) in order.iter().enumerate().skip(start) {
        if g.degree(v) <= *best {
            break;
        }
        if left_size + (order.len() - i) <= *best {
            return;
        }
        let next = common & g.neighbors(v);
        if next.count_ones() as usize > *best {
            grow_left(g, order, i + 1, left_size + 1, next, cap, best);
            if *best >= cap {
                return;
            }
        }
    }
}

/// Core number of the graph: max over the min-degree removal sequence of the
/// degree at removal time.
pub fn degeneracy(g: &Graph) -> usize {
    let mut alive = g.vertex_set();
    let mut result = 0;
    while alive != 0 {
        let (v, d) = members(alive)
            .map(|v| (v, (g.neighbors(v) & alive).count_ones() as usize))
            .min_by_key(|&(v, d)| (d, v))
            .expect("alive is nonempty");
        result = result.max(d);
        alive &= !(1 << v);
    }
    result
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Color of each vertex, numbered from 0.
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().iter().all(|e| self.colors[e.u] != self.colors[e.v])
    }
}

/// First-fit coloring in the given vertex order.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Coloring {
    let mut colors = vec![usize::MAX; g.n()];
    let mut count = 0;
    for &v in order {
        let used: Vec<usize> = members(g.neighbors(v)).map(|w| colors[w]).filter(|&c| c != usize::MAX).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("unbounded range");
        colors[v] = c;
        count = count.max(c + 1);
    }
    Coloring { colors, count }
}

pub fn chromatic_number(g: &Graph) -> Result<usize, GraphError> {
    chromatic_number_with_limit(g, DEFAULT_CHROMATIC_LIMIT)
}

/// Exact chromatic number: tries `k` colors from the clique bound upward,
/// each by backtracking in saturation order.
pub fn chromatic_number_with_limit(g: &Graph, limit: usize) -> Result<usize, GraphError> {
    check_limit(g, "chromatic_number", limit)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let order: Vec<usize> = (0..g.n()).collect();
    let upper = greedy_coloring(g, &order).count;
    let lower = max_clique(g)?.len().max(1);
    for k in lower..upper {
        let mut colors = vec![usize::MAX; g.n()];
        if color_with(g, k, &mut colors, 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn color_with(g: &Graph, k: usize, colors: &mut [usize], done: usize) -> bool {
    if done == g.n() {
        return true;
    }
    // Uncolored vertex with the most distinct neighbor colors, then degree.
    let (v, forbidden) = (0..g.n())
        .filter(|&v| colors[v] == usize::MAX)
        .map(|v| {
            let mask =
                members(g.neighbors(v)).filter(|&w| colors[w] != usize::MAX).fold(0u64, |m, w| m | 1 << colors[w]);
            (v, mask)
        })
        .max_by_key(|&(v, mask)| (mask.count_ones(), g.degree(v), std::cmp::Reverse(v)))
        .expect("some vertex is uncolored");
    // Only one fresh color needs trying: fresh colors are interchangeable.
    let fresh = colors.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
    for c in 0..k.min(fresh + 1) {
        if forbidden >> c & 1 == 0 {
            colors[v] = c;
            if color_with(g, k, colors, done + 1) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}
