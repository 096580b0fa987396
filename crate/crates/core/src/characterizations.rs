//! Decision procedures for graphs whose edge metric dimension is close to
//! the vertex count, and the diameter consequences that follow from them.
//!
//! "Non-mutual neighbor" is read literally: `x` is a non-mutual neighbor of
//! `a, b` when it is adjacent to exactly one of them, with `x` ranging over
//! all vertices. For an adjacent pair this makes `a` and `b` themselves
//! non-mutual neighbors. Both predicates below are unaffected by that choice:
//! the witness vertex is already required to be adjacent to `a` and `b`, and
//! the second triple condition only looks outside the triple.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{bfs_all_pairs, DistanceMatrix};
use crate::graph::{members, Graph, GraphError, VertexSet};
use crate::solver::{solve_with_distances, SolverError, SolverOptions, Target};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterizationError {
    #[error("characterizations need at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn prepare(g: &Graph) -> Result<DistanceMatrix, CharacterizationError> {
    g.ensure_connected()?;
    if g.n() < 3 {
        return Err(CharacterizationError::TooSmall(g.n()));
    }
    Ok(bfs_all_pairs(g))
}

/// Vertices adjacent to exactly one of `a`, `b`.
pub fn non_mutual_neighbors(g: &Graph, a: usize, b: usize) -> VertexSet {
    g.neighbors(a) ^ g.neighbors(b)
}

/// Outcome of the pair condition: `failing_pair` is the first pair (in
/// lexicographic order) with no suitable common neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub holds: bool,
    pub failing_pair: Option<(usize, usize)>,
}

/// Whether every pair `a, b` has a common neighbor adjacent to all of their
/// non-mutual neighbors; equivalent to `edim(G) = n - 1`.
pub fn char_edim_n1(g: &Graph) -> Result<PairCheck, CharacterizationError> {
    prepare(g)?;
    Ok(pair_condition(g))
}

fn pair_condition(g: &Graph) -> PairCheck {
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let nm = non_mutual_neighbors(g, a, b);
            let common = g.neighbors(a) & g.neighbors(b);
            if !members(common).any(|u| nm & !g.neighbors(u) == 0) {
                return PairCheck { holds: false, failing_pair: Some((a, b)) };
            }
        }
    }
    PairCheck { holds: true, failing_pair: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleMode {
    /// `v3` is a common neighbor of `v1, v2` adjacent to all their
    /// non-mutual neighbors.
    ApexInTriple,
    /// An outside common neighbor `u` of `v1, v2` covers their non-mutual
    /// neighbors outside the triple and is within distance 2 of every
    /// outside vertex at distance exactly 2 from the nearer of `v1, v2`.
    OutsideApex,
}

/// An ordering `(v1, v2, v3)` of a triple that satisfies `mode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleWitness {
    pub ordering: [usize; 3],
    pub mode: TripleMode,
    pub u: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleOutcome {
    pub triple: [usize; 3],
    pub witness: Option<TripleWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCheck {
    pub holds: bool,
    /// One entry per triple in lexicographic order.
    pub outcomes: Vec<TripleOutcome>,
}

impl TripleCheck {
    pub fn first_failure(&self) -> Option<[usize; 3]> {
        self.outcomes.iter().find(|o| o.witness.is_none()).map(|o| o.triple)
    }
}

/// Whether every vertex triple admits one of the two orderings; equivalent
/// to `edim(G) >= n - 2`.
pub fn char_edim_ge_n2(g: &Graph) -> Result<TripleCheck, CharacterizationError> {
    let dm = prepare(g)?;
    Ok(triple_condition(g, &dm))
}

fn triple_condition(g: &Graph, dm: &DistanceMatrix) -> TripleCheck {
    let n = g.n();
    let mut outcomes = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let triple = [a, b, c];
                outcomes.push(TripleOutcome { triple, witness: triple_witness(g, dm, triple) });
            }
        }
    }
    TripleCheck { holds: outcomes.iter().all(|o| o.witness.is_some()), outcomes }
}

/// Orderings with `v3` in each position, `v1 < v2`.
fn orderings(t: [usize; 3]) -> [[usize; 3]; 3] {
    [[t[1], t[2], t[0]], [t[0], t[2], t[1]], [t[0], t[1], t[2]]]
}

fn triple_witness(g: &Graph, dm: &DistanceMatrix, triple: [usize; 3]) -> Option<TripleWitness> {
    for [v1, v2, v3] in orderings(triple) {
        let apex = g.neighbors(v3);
        let nm = non_mutual_neighbors(g, v1, v2);
        if apex >> v1 & 1 == 1 && apex >> v2 & 1 == 1 && nm & !apex == 0 {
            return Some(TripleWitness { ordering: [v1, v2, v3], mode: TripleMode::ApexInTriple, u: None });
        }
    }
    let outside = g.vertex_set() & !triple.iter().fold(0, |m, &v| m | 1u64 << v);
    for [v1, v2, v3] in orderings(triple) {
        let nm = non_mutual_neighbors(g, v1, v2) & outside;
        // Outside vertices at distance exactly 2 from the strictly nearer of v1, v2.
        let at_two = members(outside)
            .filter(|&x| {
                let (d1, d2) = (dm.get(x, v1), dm.get(x, v2));
                (d2 > d1 && d1 == 2) || (d1 > d2 && d2 == 2)
            })
            .fold(0u64, |m, x| m | 1 << x);
        let candidates = g.neighbors(v1) & g.neighbors(v2) & outside;
        for u in members(candidates) {
            if nm & !g.neighbors(u) == 0 && members(at_two).all(|x| dm.get(x, u) <= 2) {
                return Some(TripleWitness { ordering: [v1, v2, v3], mode: TripleMode::OutsideApex, u: Some(u) });
            }
        }
    }
    None
}

/// Not `edim = n - 1` but `edim >= n - 2`, i.e. `edim = n - 2`.
pub fn char_edim_eq_n2(g: &Graph) -> Result<bool, CharacterizationError> {
    let dm = prepare(g)?;
    Ok(!pair_condition(g).holds && triple_condition(g, &dm).holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCheck {
    pub holds: bool,
    /// `k + 1 > n`: there are no tuples to check.
    pub vacuous: bool,
    /// First `(k+1)`-set, in lexicographic order, with all pairwise
    /// distances at least 3.
    pub violating: Option<Vec<usize>>,
}

/// Whether every `(k+1)`-subset of vertices contains two vertices at
/// distance at most 2.
pub fn tuple_lemma_check(g: &Graph, k: usize) -> Result<TupleCheck, GraphError> {
    g.ensure_connected()?;
    Ok(tuple_check_with(&bfs_all_pairs(g), k))
}

fn tuple_check_with(dm: &DistanceMatrix, k: usize) -> TupleCheck {
    let n = dm.n();
    if k + 1 > n {
        return TupleCheck { holds: true, vacuous: true, violating: None };
    }
    let far: Vec<VertexSet> =
        (0..n).map(|a| (0..n).filter(|&b| dm.get(a, b) >= 3).fold(0, |m, b| m | 1 << b)).collect();
    let mut chosen = Vec::with_capacity(k + 1);
    let found = spread_set(&far, &mut chosen, crate::graph::full_set(n), k + 1);
    TupleCheck { holds: !found, vacuous: false, violating: found.then_some(chosen) }
}

/// Depth-first search, ascending, for `need` more mutually far vertices.
fn spread_set(far: &[VertexSet], chosen: &mut Vec<usize>, cand: VertexSet, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    let mut cand = cand;
    while cand.count_ones() as usize >= need {
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        chosen.push(v);
        if spread_set(far, chosen, cand & far[v], need - 1) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterCheck {
    pub n: usize,
    pub edim: usize,
    /// `n - edim`.
    pub k: usize,
    pub diameter: u32,
    /// `diameter <= 3k - 1`.
    pub within_3k_minus_1: bool,
    /// `diameter <= 5`, or not applicable when `edim != n - 2`.
    pub within_5: Option<bool>,
    pub tuple_lemma: bool,
}

impl DiameterCheck {
    pub fn passes(&self) -> bool {
        self.within_3k_minus_1 && self.within_5 != Some(false) && self.tuple_lemma
    }
}

pub fn diameter_theorem_check(g: &Graph, opts: SolverOptions) -> Result<DiameterCheck, SolverError> {
    g.ensure_connected()?;
    let dm = bfs_all_pairs(g);
    let edim = solve_with_distances(g, &dm, Target::Edges, opts)?.value;
    Ok(diameter_check_with(g, &dm, edim))
}

/// [`diameter_theorem_check`] with a known edge metric dimension.
pub fn diameter_check_with(g: &Graph, dm: &DistanceMatrix, edim: usize) -> DiameterCheck {
    let n = g.n();
    let k = n - edim;
    let diameter = dm.diameter().expect("connected");
    DiameterCheck {
        n,
        edim,
        k,
        diameter,
        within_3k_minus_1: (diameter as usize) < 3 * k,
        within_5: (edim + 2 == n).then_some(diameter <= 5),
        tuple_lemma: tuple_check_with(dm, k).holds,
    }
}

/// The three predicates on one graph, sharing a distance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Characterization {
    pub edim_n1: bool,
    pub edim_ge_n2: bool,
}

impl Characterization {
    pub fn edim_eq_n2(&self) -> bool {
        !self.edim_n1 && self.edim_ge_n2
    }
}

pub fn characterize(g: &Graph, dm: &DistanceMatrix) -> Result<Characterization, CharacterizationError> {
    g.ensure_connected()?;
    if g.n() < 3 {
        return Err(CharacterizationError::TooSmall(g.n()));
    }
    Ok(Characterization { edim_n1: pair_condition(g).holds, edim_ge_n2: triple_condition(g, dm).holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::set_from;

    #[test]
    fn non_mutual_literal_reading() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(non_mutual_neighbors(&k4, 0, 1), set_from([0, 1]));
        let p3 = Graph::path(3).unwrap();
        assert_eq!(non_mutual_neighbors(&p3, 0, 2), 0);
        let p4 = Graph::path(4).unwrap();
        assert_eq!(non_mutual_neighbors(&p4, 1, 2), set_from([0, 1, 2, 3]));
        assert_eq!(non_mutual_neighbors(&p4, 1, 2) & !set_from([1, 2]), set_from([0, 3]));
    }

    #[test]
    fn pair_condition_examples() {
        for n in 3..7 {
            assert!(char_edim_n1(&Graph::complete(n).unwrap()).unwrap().holds);
        }
        let p4 = char_edim_n1(&Graph::path(4).unwrap()).unwrap();
        assert_eq!(p4.failing_pair, Some((0, 1)));
        assert!(!char_edim_n1(&Graph::cycle(4).unwrap()).unwrap().holds);
    }

    #[test]
    fn triple_condition_examples() {
        assert!(char_edim_ge_n2(&Graph::cycle(4).unwrap()).unwrap().holds);
        assert!(!char_edim_ge_n2(&Graph::cycle(6).unwrap()).unwrap().holds);
        let k4 = char_edim_ge_n2(&Graph::complete(4).unwrap()).unwrap();
        assert!(k4.holds);
        assert_eq!(k4.outcomes.len(), 4);
        assert_eq!(k4.outcomes[0].witness.unwrap().mode, TripleMode::ApexInTriple);
    }

    #[test]
    fn recorded_witnesses_satisfy_their_condition() {
        let g = Graph::cycle(4).unwrap();
        let check = char_edim_ge_n2(&g).unwrap();
        for o in &check.outcomes {
            let w = o.witness.unwrap();
            let [v1, v2, v3] = w.ordering;
            let mut sorted = w.ordering;
            sorted.sort();
            assert_eq!(sorted, o.triple);
            match w.mode {
                TripleMode::ApexInTriple => assert!(g.has_edge(v3, v1) && g.has_edge(v3, v2)),
                TripleMode::OutsideApex => {
                    let u = w.u.unwrap();
                    assert!(!o.triple.contains(&u) && g.has_edge(u, v1) && g.has_edge(u, v2));
                }
            }
        }
    }

    #[test]
    fn equality_predicate() {
        assert!(char_edim_eq_n2(&Graph::cycle(4).unwrap()).unwrap());
        assert!(!char_edim_eq_n2(&Graph::complete(4).unwrap()).unwrap());
        assert!(!char_edim_eq_n2(&Graph::path(5).unwrap()).unwrap());
    }

    #[test]
    fn small_and_disconnected_inputs() {
        assert_eq!(char_edim_n1(&Graph::path(2).unwrap()), Err(CharacterizationError::TooSmall(2)));
        let split = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(char_edim_ge_n2(&split), Err(CharacterizationError::Graph(GraphError::Disconnected)));
    }

    #[test]
    fn tuple_lemma_examples() {
        let k5 = Graph::complete(5).unwrap();
        assert!(tuple_lemma_check(&k5, 2).unwrap().holds);
        let p7 = tuple_lemma_check(&Graph::path(7).unwrap(), 2).unwrap();
        assert!(!p7.holds);
        assert_eq!(p7.violating, Some(vec![0, 3, 6]));
        assert!(tuple_lemma_check(&Graph::cycle(4).unwrap(), 1).unwrap().holds);
        let vac = tuple_lemma_check(&Graph::cycle(4).unwrap(), 4).unwrap();
        assert!(vac.holds && vac.vacuous);
    }

    #[test]
    fn diameter_checks() {
        let opts = SolverOptions::default();
        let c4 = diameter_theorem_check(&Graph::cycle(4).unwrap(), opts).unwrap();
        assert_eq!((c4.edim, c4.diameter, c4.within_5), (2, 2, Some(true)));
        assert!(c4.passes());
        let k5 = diameter_theorem_check(&Graph::complete(5).unwrap(), opts).unwrap();
        assert_eq!((k5.edim, k5.k, k5.diameter), (4, 1, 1));
        assert!(k5.passes());
        let p7 = diameter_theorem_check(&Graph::path(7).unwrap(), opts).unwrap();
        assert_eq!((p7.edim, p7.k, p7.diameter, p7.within_5), (1, 6, 6, None));
        assert!(p7.passes());
    }
}
