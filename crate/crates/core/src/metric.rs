//! Distance vectors and resolving-set verification for vertices and edges.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{bfs_all_pairs, DistanceMatrix};
use crate::graph::{members, set_from, Edge, Graph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("landmark {id} is not a vertex of a graph on {n} vertices")]
pub struct LandmarkError {
    pub id: usize,
    pub n: usize,
}

/// Sorted, duplicate-free set of landmark vertices. The sorted order fixes the
/// coordinate order of every distance vector.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LandmarkSet(Vec<usize>);

impl LandmarkSet {
    /// Sorts and deduplicates `ids`; every id must be below `n`.
    pub fn new<I: IntoIterator<Item = usize>>(ids: I, n: usize) -> Result<Self, LandmarkError> {
        let mut v: Vec<usize> = ids.into_iter().collect();
        if let Some(&id) = v.iter().find(|&&id| id >= n) {
            return Err(LandmarkError { id, n });
        }
        v.sort_unstable();
        v.dedup();
        Ok(LandmarkSet(v))
    }

    pub fn from_mask(mask: VertexSet) -> Self {
        LandmarkSet(members(mask).collect())
    }

    pub fn empty() -> Self {
        LandmarkSet(Vec::new())
    }

    pub fn mask(&self) -> VertexSet {
        set_from(self.0.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for LandmarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistanceVector(pub Vec<u32>);

impl fmt::Display for DistanceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn vertex_distance_vector(dm: &DistanceMatrix, v: usize, s: &LandmarkSet) -> DistanceVector {
    DistanceVector(s.iter().map(|x| dm.get(x, v)).collect())
}

pub fn edge_distance_vector(dm: &DistanceMatrix, e: Edge, s: &LandmarkSet) -> DistanceVector {
    DistanceVector(s.iter().map(|x| dm.edge_vertex(e, x)).collect())
}

/// A vertex or an edge, the two kinds of object a landmark set can resolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Object {
    Vertex(usize),
    Edge(Edge),
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Vertex(v) => write!(f, "{v}"),
            Object::Edge(e) => write!(f, "{e}"),
        }
    }
}

/// Two distinct objects with the same distance vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionWitness {
    pub a: Object,
    pub b: Object,
    pub shared_vector: DistanceVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Resolving,
    Collision(ResolutionWitness),
}

impl Resolution {
    pub fn is_resolving(&self) -> bool {
        matches!(self, Resolution::Resolving)
    }

    pub fn witness(&self) -> Option<&ResolutionWitness> {
        match self {
            Resolution::Resolving => None,
            Resolution::Collision(w) => Some(w),
        }
    }
}

/// Finds the lexicographically first colliding pair (by object index) among
/// `vectors`, which are listed in object order.
fn first_collision(objects: &[Object], vectors: Vec<DistanceVector>) -> Resolution {
    let mut first_seen: HashMap<&DistanceVector, usize> = HashMap::with_capacity(vectors.len());
    let mut best: Option<(usize, usize)> = None;
    for (i, vec) in vectors.iter().enumerate() {
        match first_seen.get(vec) {
            Some(&a) => {
                // Within a group the first two members form its least pair.
                if best.is_none_or(|(ba, _)| a < ba) {
                    best = Some((a, i));
                }
            }
            None => {
                first_seen.insert(vec, i);
            }
        }
    }
    match best {
        None => Resolution::Resolving,
        Some((a, b)) => {
            Resolution::Collision(ResolutionWitness { a: objects[a], b: objects[b], shared_vector: vectors[a].clone() })
        }
    }
}

/// Vertex resolution against a precomputed distance matrix.
pub fn vertex_resolution(dm: &DistanceMatrix, s: &LandmarkSet) -> Resolution {
    let objects: Vec<Object> = (0..dm.n()).map(Object::Vertex).collect();
    let vectors = (0..dm.n()).map(|v| vertex_distance_vector(dm, v, s)).collect();
    first_collision(&objects, vectors)
}

/// Edge resolution against a precomputed distance matrix and edge list.
pub fn edge_resolution(dm: &DistanceMatrix, edges: &[Edge], s: &LandmarkSet) -> Resolution {
    let objects: Vec<Object> = edges.iter().copied().map(Object::Edge).collect();
    let vectors = edges.iter().map(|&e| edge_distance_vector(dm, e, s)).collect();
    first_collision(&objects, vectors)
}

pub fn is_vertex_resolving(g: &Graph, s: &LandmarkSet) -> Result<Resolution, GraphError> {
    g.ensure_connected()?;
    Ok(vertex_resolution(&bfs_all_pairs(g), s))
}

pub fn is_edge_resolving(g: &Graph, s: &LandmarkSet) -> Result<Resolution, GraphError> {
    g.ensure_connected()?;
    Ok(edge_resolution(&bfs_all_pairs(g), &g.edges(), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ids: &[usize], n: usize) -> LandmarkSet {
        LandmarkSet::new(ids.iter().copied(), n).unwrap()
    }

    #[test]
    fn landmark_set_normalizes() {
        let s = LandmarkSet::new([3, 1, 3], 4).unwrap();
        assert_eq!(s.as_slice(), &[1, 3]);
        assert_eq!(s.mask(), 0b1010);
        assert_eq!(LandmarkSet::new([4], 4), Err(LandmarkError { id: 4, n: 4 }));
        assert_eq!(s.to_string(), "{1, 3}");
    }

    #[test]
    fn vertex_vectors() {
        let dm = bfs_all_pairs(&Graph::path(3).unwrap());
        assert_eq!(vertex_distance_vector(&dm, 0, &set(&[2], 3)), DistanceVector(vec![2]));
        assert_eq!(vertex_distance_vector(&dm, 1, &set(&[0, 1], 3)), DistanceVector(vec![1, 0]));
    }

    #[test]
    fn edge_vectors() {
        let dm = bfs_all_pairs(&Graph::path(4).unwrap());
        assert_eq!(edge_distance_vector(&dm, Edge::new(2, 3), &set(&[0], 4)), DistanceVector(vec![2]));
        assert_eq!(edge_distance_vector(&dm, Edge::new(0, 1), &set(&[1, 3], 4)).0[0], 0);
    }

    #[test]
    fn vertex_resolving_examples() {
        let p3 = Graph::path(3).unwrap();
        assert!(is_vertex_resolving(&p3, &set(&[0, 1, 2], 3)).unwrap().is_resolving());
        let mid = is_vertex_resolving(&p3, &set(&[1], 3)).unwrap();
        let w = mid.witness().unwrap();
        assert_eq!((w.a, w.b), (Object::Vertex(0), Object::Vertex(2)));
        assert_eq!(w.shared_vector, DistanceVector(vec![1]));
        assert!(is_vertex_resolving(&p3, &set(&[0], 3)).unwrap().is_resolving());
    }

    #[test]
    fn edge_resolving_examples() {
        let k2 = Graph::path(2).unwrap();
        assert!(is_edge_resolving(&k2, &LandmarkSet::empty()).unwrap().is_resolving());
        let k3 = Graph::complete(3).unwrap();
        let r = is_edge_resolving(&k3, &set(&[0], 3)).unwrap();
        let w = r.witness().unwrap();
        assert_eq!(w.a, Object::Edge(Edge::new(0, 1)));
        assert_eq!(w.b, Object::Edge(Edge::new(0, 2)));
        assert_eq!(w.shared_vector, DistanceVector(vec![0]));
    }

    #[test]
    fn empty_set_resolves_at_most_one_object() {
        let one = Graph::empty(1).unwrap();
        assert!(is_vertex_resolving(&one, &LandmarkSet::empty()).unwrap().is_resolving());
        let p3 = Graph::path(3).unwrap();
        assert!(!is_edge_resolving(&p3, &LandmarkSet::empty()).unwrap().is_resolving());
    }

    #[test]
    fn witness_is_lexicographically_first() {
        // Star K_{1,3} centered at 0 with landmark at the center: all leaves
        // collide; the first pair is (1, 2).
        let star = Graph::complete_bipartite(1, 3).unwrap();
        let r = is_vertex_resolving(&star, &set(&[0], 4)).unwrap();
        let w = r.witness().unwrap();
        assert_eq!((w.a, w.b), (Object::Vertex(1), Object::Vertex(2)));
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(is_vertex_resolving(&g, &set(&[0], 4)), Err(GraphError::Disconnected));
        assert_eq!(is_edge_resolving(&g, &set(&[0], 4)), Err(GraphError::Disconnected));
    }

    fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (proptest::collection::vec(0..n, n - 1), proptest::collection::vec(any::<bool>(), pairs)).prop_map(
                move |(parents, extra)| {
                    let mut g = Graph::empty(n).unwrap();
                    for v in 1..n {
                        g.add_edge(parents[v - 1] % v, v).unwrap();
                    }
                    let mut it = extra.into_iter();
                    for b in 1..n {
                        for a in 0..b {
                            if it.next().unwrap() && !g.has_edge(a, b) {
                                g.add_edge(a, b).unwrap();
                            }
                        }
                    }
                    g
                },
            )
        })
    }

    proptest! {
        #[test]
        fn resolution_is_monotone(g in arb_connected(10), small in any::<u64>(), extra in any::<u64>()) {
            let all = g.vertex_set();
            let s = LandmarkSet::from_mask(small & all);
            let t = LandmarkSet::from_mask((small | extra) & all);
            if is_vertex_resolving(&g, &s).unwrap().is_resolving() {
                prop_assert!(is_vertex_resolving(&g, &t).unwrap().is_resolving());
            }
            if is_edge_resolving(&g, &s).unwrap().is_resolving() {
                prop_assert!(is_edge_resolving(&g, &t).unwrap().is_resolving());
            }
        }

        #[test]
        fn whole_vertex_set_resolves(g in arb_connected(10)) {
            let s = LandmarkSet::from_mask(g.vertex_set());
            prop_assert!(is_vertex_resolving(&g, &s).unwrap().is_resolving());
        }

        #[test]
        fn coordinates_agree_on_shared_landmarks(g in arb_connected(10), a in any::<u64>(), b in any::<u64>()) {
            let dm = bfs_all_pairs(&g);
            let s = LandmarkSet::from_mask(a & g.vertex_set());
            let t = LandmarkSet::from_mask(b & g.vertex_set());
            for v in 0..g.n() {
                let vs = vertex_distance_vector(&dm, v, &s);
                let vt = vertex_distance_vector(&dm, v, &t);
                for (i, x) in s.iter().enumerate() {
                    if let Ok(j) = t.as_slice().binary_search(&x) {
                        prop_assert_eq!(vs.0[i], vt.0[j]);
                    }
                }
            }
        }

        #[test]
        fn edge_coordinates_are_endpoint_minima(g in arb_connected(10), a in any::<u64>()) {
            let dm = bfs_all_pairs(&g);
            let s = LandmarkSet::from_mask(a & g.vertex_set());
            for e in g.edges() {
                let ev = edge_distance_vector(&dm, e, &s);
                let (pu, pv) = (vertex_distance_vector(&dm, e.u, &s), vertex_distance_vector(&dm, e.v, &s));
                for i in 0..s.len() {
                    prop_assert!(ev.0[i] <= pu.0[i] && ev.0[i] <= pv.0[i]);
                    prop_assert!(ev.0[i] == pu.0[i] || ev.0[i] == pv.0[i]);
                }
            }
        }
    }
}
