//! All-pairs hop distances.

use crate::graph::{members, Edge, Graph, GraphError, VertexSet};

/// Distance between vertices in different components.
///
/// Far below `u32::MAX`, so adding small constants never wraps.
pub const UNREACHABLE: u32 = u32::MAX >> 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.d[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.d[a * self.n..(a + 1) * self.n]
    }

    /// `min(d(x, v), d(y, v))` for `e = {x, y}`.
    #[inline]
    pub fn edge_vertex(&self, e: Edge, v: usize) -> u32 {
        self.get(e.u, v).min(self.get(e.v, v))
    }

    /// Largest finite entry, or `None` if some pair is unreachable.
    pub fn diameter(&self) -> Option<u32> {
        let max = self.d.iter().copied().max().unwrap_or(0);
        (max != UNREACHABLE).then_some(max)
    }

    /// Checks symmetry, zero diagonal, adjacency agreement and the
    /// triangle inequality over reachable pairs.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let n = self.n;
        if g.n() != n {
            return Err(format!("matrix is {n}x{n}, graph has {} vertices", g.n()));
        }
        for a in 0..n {
            if self.get(a, a) != 0 {
                return Err(format!("d({a},{a}) != 0"));
            }
            for b in 0..n {
                let dab = self.get(a, b);
                if dab != self.get(b, a) {
                    return Err(format!("d({a},{b}) is not symmetric"));
                }
                if (dab == 1) != g.has_edge(a, b) {
                    return Err(format!("d({a},{b}) = {dab} disagrees with adjacency"));
                }
                if dab == UNREACHABLE {
                    continue;
                }
                for c in 0..n {
                    let (dac, dcb) = (self.get(a, c), self.get(c, b));
                    if dac != UNREACHABLE && dcb != UNREACHABLE && dab > dac + dcb {
                        return Err(format!("triangle inequality fails on {a},{c},{b}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Breadth-first search from every vertex, one bitset frontier per level.
pub fn bfs_all_pairs(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![UNREACHABLE; n * n];
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        let mut seen: VertexSet = 1 << s;
        let mut frontier: VertexSet = 1 << s;
        let mut level = 0;
        while frontier != 0 {
            for v in members(frontier) {
                row[v] = level;
            }
            let mut next = 0;
            for v in members(frontier) {
                next |= g.neighbors(v);
            }
            frontier = next & !seen;
            seen |= frontier;
            level += 1;
        }
    }
    let dm = DistanceMatrix { n, d };
    debug_assert_eq!(dm.validate(g), Ok(()));
    dm
}

pub fn diameter(g: &Graph) -> Result<u32, GraphError> {
    g.ensure_connected()?;
    Ok(bfs_all_pairs(g).diameter().expect("connected graph has finite diameter"))
}

pub fn edge_vertex_distance(dm: &DistanceMatrix, e: Edge, v: usize) -> u32 {
    dm.edge_vertex(e, v)
}
