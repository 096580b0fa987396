//! Exact metric and edge metric dimension.
//!
//! A landmark set resolves a family of objects iff it contains, for every
//! pair of objects, some vertex at different distances from the two. Each
//! pair therefore contributes one distinguisher set and the minimum resolving
//! set is a minimum hitting set of that family. The hitting set is found by
//! iterative deepening from a disjoint-families lower bound, branching on the
//! smallest unhit family, and the optimal basis is then canonicalized to the
//! lexicographically smallest one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{bfs_all_pairs, DistanceMatrix};
use crate::graph::{members, Graph, GraphError, VertexSet};
use crate::metric::{edge_resolution, vertex_resolution, LandmarkSet, Object};

/// Graphs up to this size are solved without a node budget by default.
pub const UNBUDGETED_MAX_N: usize = 20;
/// Node budget applied above [`UNBUDGETED_MAX_N`] when the caller sets none.
pub const DEFAULT_LARGE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("search budget exhausted after {nodes} nodes: optimum in [{lower}, {upper}]")]
    BudgetExhausted { nodes: u64, lower: usize, upper: usize, best: LandmarkSet },
    #[error("objects {0} and {1} cannot be distinguished by any vertex")]
    EmptyFamily(Object, Object),
}

/// One object pair and the vertices whose distances to the two differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub pair: (Object, Object),
    pub distinguishers: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguisherInstance {
    /// Universe is `0..n`.
    pub n: usize,
    pub families: Vec<Family>,
}

impl DistinguisherInstance {
    pub fn is_hit_by(&self, set: VertexSet) -> bool {
        self.families.iter().all(|f| f.distinguishers & set != 0)
    }

    pub fn family_for(&self, a: Object, b: Object) -> Option<VertexSet> {
        self.families.iter().find(|f| f.pair == (a, b) || f.pair == (b, a)).map(|f| f.distinguishers)
    }
}

/// Which objects a landmark set is asked to resolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Vertices,
    Edges,
}

pub fn vertex_instance_from(dm: &DistanceMatrix) -> DistinguisherInstance {
    let n = dm.n();
    let mut families = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            let (ra, rb) = (dm.row(a), dm.row(b));
            let distinguishers = (0..n).filter(|&x| ra[x] != rb[x]).fold(0, |s, x| s | 1 << x);
            families.push(Family { pair: (Object::Vertex(a), Object::Vertex(b)), distinguishers });
        }
    }
    DistinguisherInstance { n, families }
}

pub fn edge_instance_from(dm: &DistanceMatrix, g: &Graph) -> DistinguisherInstance {
    let n = dm.n();
    let edges = g.edges();
    // Distance from every edge to every vertex, one row per edge.
    let rows: Vec<Vec<u32>> = edges.iter().map(|&e| (0..n).map(|x| dm.edge_vertex(e, x)).collect()).collect();
    let mut families = Vec::with_capacity(edges.len() * edges.len().saturating_sub(1) / 2);
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let distinguishers = (0..n).filter(|&x| rows[i][x] != rows[j][x]).fold(0, |s, x| s | 1 << x);
            families.push(Family { pair: (Object::Edge(edges[i]), Object::Edge(edges[j])), distinguishers });
        }
    }
    DistinguisherInstance { n, families }
}

pub fn build_vertex_instance(g: &Graph) -> Result<DistinguisherInstance, GraphError> {
    g.ensure_connected()?;
    Ok(vertex_instance_from(&bfs_all_pairs(g)))
}

pub fn build_edge_instance(g: &Graph) -> Result<DistinguisherInstance, GraphError> {
    g.ensure_connected()?;
    Ok(edge_instance_from(&bfs_all_pairs(g), g))
}

/// Max-coverage greedy hitting set; ties go to the smallest vertex id.
pub fn greedy_upper_bound(inst: &DistinguisherInstance) -> LandmarkSet {
    let mut unhit: Vec<VertexSet> = inst.families.iter().map(|f| f.distinguishers).collect();
    let mut chosen = 0;
    while !unhit.is_empty() {
        let mut counts = [0usize; 64];
        for &f in &unhit {
            for x in members(f) {
                counts[x] += 1;
            }
        }
        let (x, &c) = counts.iter().enumerate().max_by_key(|&(x, c)| (*c, std::cmp::Reverse(x))).expect("64 counters");
        if c == 0 {
            // Only empty families remain; nothing can hit them.
            break;
        }
        chosen |= 1 << x;
        unhit.retain(|&f| f >> x & 1 == 0);
    }
    LandmarkSet::from_mask(chosen)
}

/// Size of a greedily built collection of pairwise disjoint families,
/// taken in order of increasing size.
pub fn disjoint_pairs_lower_bound(inst: &DistinguisherInstance) -> usize {
    let mut sets: Vec<VertexSet> = inst.families.iter().map(|f| f.distinguishers).collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    disjoint_count(sets.iter().copied())
}

fn disjoint_count(sets: impl Iterator<Item = VertexSet>) -> usize {
    let mut used = 0;
    let mut count = 0;
    for s in sets {
        if s & used == 0 {
            used |= s;
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimality {
    /// Every set smaller than `value` was ruled out by exhaustive search.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCertificate {
    pub value: usize,
    /// Lexicographically smallest optimal hitting set.
    pub basis: LandmarkSet,
    /// Smallest size among nonempty resolving sets. Differs from `value`
    /// only when the empty set already resolves (at most one object).
    pub nonempty_value: usize,
    pub lower_bound: usize,
    pub greedy_upper: usize,
    pub search_nodes: u64,
    pub optimality: Optimality,
}

struct Search<'a> {
    /// Sorted by increasing size.
    families: &'a [VertexSet],
    nodes: u64,
    budget: Option<u64>,
}

struct OutOfBudget;

impl Search<'_> {
    /// Looks for a hitting set of at most `slots` more elements drawn from
    /// `allowed`, extending `chosen`.
    fn extend(
        &mut self,
        chosen: VertexSet,
        allowed: VertexSet,
        slots: usize,
    ) -> Result<Option<VertexSet>, OutOfBudget> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(OutOfBudget);
        }
        let mut branch: Option<VertexSet> = None;
        for &f in self.families {
            if f & chosen != 0 {
                continue;
            }
            let live = f & allowed;
            if live == 0 {
                return Ok(None);
            }
            if branch.is_none_or(|b| live.count_ones() < b.count_ones()) {
                branch = Some(live);
            }
        }
        let Some(mut branch) = branch else {
            return Ok(Some(chosen));
        };
        if slots == 0 {
            return Ok(None);
        }
        let unhit = self.families.iter().filter(|&&f| f & chosen == 0).map(|&f| f & allowed);
        if disjoint_count(unhit) > slots {
            return Ok(None);
        }
        let mut allowed = allowed;
        while branch != 0 {
            let x = branch.trailing_zeros() as usize;
            if let Some(found) = self.extend(chosen | 1 << x, allowed, slots - 1)? {
                return Ok(Some(found));
            }
            // Later siblings need not consider x again.
            allowed &= !(1 << x);
            branch &= !(1 << x);
        }
        Ok(None)
    }
}

/// Drops duplicate families and families that contain another family.
fn reduce_families(inst: &DistinguisherInstance) -> Vec<VertexSet> {
    let mut sets: Vec<VertexSet> = inst.families.iter().map(|f| f.distinguishers).collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    kept
}

pub fn min_hitting_set(inst: &DistinguisherInstance, budget: Option<u64>) -> Result<DimensionCertificate, SolverError> {
    if let Some(f) = inst.families.iter().find(|f| f.distinguishers == 0) {
        return Err(SolverError::EmptyFamily(f.pair.0, f.pair.1));
    }
    let nonempty_floor = usize::from(inst.n > 0);
    let families = reduce_families(inst);
    let lower = disjoint_pairs_lower_bound(inst);
    let greedy = greedy_upper_bound(inst);
    let universe = crate::graph::full_set(inst.n);
    let mut search = Search { families: &families, nodes: 0, budget };
    let exhausted = |search: &Search, lower: usize| SolverError::BudgetExhausted {
        nodes: search.nodes,
        lower,
        upper: greedy.len(),
        best: greedy.clone(),
    };

    let mut value = greedy.len();
    for k in lower..greedy.len() {
        match search.extend(0, universe, k) {
            Ok(Some(_)) => {
                value = k;
                break;
            }
            Ok(None) => {}
            Err(OutOfBudget) => return Err(exhausted(&search, k)),
        }
    }

    // Fix elements one at a time, smallest feasible id first.
    let mut basis: VertexSet = 0;
    let mut floor = 0;
    for placed in 0..value {
        let mut fixed = false;
        let start = floor;
        for x in start..inst.n {
            let chosen = basis | 1 << x;
            let above = universe & !((2u64 << x) - 1);
            match search.extend(chosen, above, value - placed - 1) {
                Ok(Some(_)) => {
                    basis = chosen;
                    floor = x + 1;
                    fixed = true;
                    break;
                }
                Ok(None) => {}
                Err(OutOfBudget) => return Err(exhausted(&search, value)),
            }
        }
        assert!(fixed, "optimal hitting set of size {value} must extend");
    }
    debug_assert!(inst.is_hit_by(basis));

    Ok(DimensionCertificate {
        value,
        basis: LandmarkSet::from_mask(basis),
        nonempty_value: value.max(nonempty_floor),
        lower_bound: lower,
        greedy_upper: greedy.len(),
        search_nodes: search.nodes,
        optimality: Optimality::Exhausted,
    })
}

/// Solver knobs. `budget: None` means unlimited up to
/// [`UNBUDGETED_MAX_N`] vertices and [`DEFAULT_LARGE_BUDGET`] above.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverOptions {
    pub budget: Option<u64>,
}

impl SolverOptions {
    pub fn with_budget(budget: u64) -> Self {
        SolverOptions { budget: Some(budget) }
    }

    fn effective_budget(&self, n: usize) -> Option<u64> {
        self.budget.or((n > UNBUDGETED_MAX_N).then_some(DEFAULT_LARGE_BUDGET))
    }
}

pub fn metric_dimension(g: &Graph) -> Result<DimensionCertificate, SolverError> {
    solve(g, Target::Vertices, SolverOptions::default())
}

pub fn edge_metric_dimension(g: &Graph) -> Result<DimensionCertificate, SolverError> {
    solve(g, Target::Edges, SolverOptions::default())
}

pub fn solve(g: &Graph, target: Target, opts: SolverOptions) -> Result<DimensionCertificate, SolverError> {
    g.ensure_connected()?;
    let dm = bfs_all_pairs(g);
    solve_with_distances(g, &dm, target, opts)
}

/// Like [`solve`] with a precomputed distance matrix for `g`.
pub fn solve_with_distances(
    g: &Graph,
    dm: &DistanceMatrix,
    target: Target,
    opts: SolverOptions,
) -> Result<DimensionCertificate, SolverError> {
    let inst = match target {
        Target::Vertices => vertex_instance_from(dm),
        Target::Edges => edge_instance_from(dm, g),
    };
    let cert = min_hitting_set(&inst, opts.effective_budget(g.n()))?;
    let check = match target {
        Target::Vertices => vertex_resolution(dm, &cert.basis),
        Target::Edges => edge_resolution(dm, &g.edges(), &cert.basis),
    };
    assert!(check.is_resolving(), "certified basis {} fails to resolve", cert.basis);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::set_from;

    fn inst(n: usize, sets: &[&[usize]]) -> DistinguisherInstance {
        DistinguisherInstance {
            n,
            families: sets
                .iter()
                .enumerate()
                .map(|(i, s)| Family {
                    pair: (Object::Vertex(i), Object::Vertex(i + 1)),
                    distinguishers: set_from(s.iter().copied()),
                })
                .collect(),
        }
    }

    /// Smallest `k` such that some `k`-subset hits every family, scanning
    /// subsets in increasing size.
    fn brute_hitting(inst: &DistinguisherInstance) -> usize {
        (0u64..1 << inst.n).filter(|&s| inst.is_hit_by(s)).map(|s| s.count_ones() as usize).min().unwrap()
    }

    #[test]
    fn k3_families_are_the_pairs() {
        let i = build_vertex_instance(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(i.families.len(), 3);
        for f in &i.families {
            let (Object::Vertex(a), Object::Vertex(b)) = f.pair else { unreachable!() };
            assert_eq!(f.distinguishers, set_from([a, b]));
        }
    }

    #[test]
    fn path_families() {
        let p3 = build_vertex_instance(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(p3.family_for(Object::Vertex(0), Object::Vertex(2)), Some(0b101));
        let p4 = build_vertex_instance(&Graph::path(4).unwrap()).unwrap();
        assert_eq!(p4.family_for(Object::Vertex(1), Object::Vertex(2)), Some(0b1111));
    }

    #[test]
    fn all_universe_families() {
        let i = inst(4, &[&[0, 1, 2, 3], &[0, 1, 2, 3]]);
        let c = min_hitting_set(&i, None).unwrap();
        assert_eq!(c.value, 1);
        assert_eq!(c.basis.as_slice(), &[0]);
    }

    #[test]
    fn k4_instance() {
        let i = build_vertex_instance(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(brute_hitting(&i), 3);
        let c = min_hitting_set(&i, None).unwrap();
        assert_eq!(c.value, 3);
        assert_eq!(c.basis.as_slice(), &[0, 1, 2]);
        assert_eq!(greedy_upper_bound(&i).len(), 3);
    }

    #[test]
    fn bounds_meet() {
        let i = inst(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(disjoint_pairs_lower_bound(&i), 2);
        assert_eq!(greedy_upper_bound(&i).len(), 2);
        let c = min_hitting_set(&i, None).unwrap();
        assert_eq!((c.value, c.search_nodes > 0), (2, true));
        assert_eq!(c.basis.as_slice(), &[0, 2]);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(disjoint_pairs_lower_bound(&inst(3, &[&[1, 2]])), 1);
        assert_eq!(disjoint_pairs_lower_bound(&inst(3, &[&[0, 1], &[0, 2], &[1, 2]])), 1);
        assert_eq!(greedy_upper_bound(&inst(3, &[&[1, 2]])).len(), 1);
    }

    #[test]
    fn empty_family_is_rejected() {
        let i = inst(3, &[&[0], &[]]);
        assert!(matches!(min_hitting_set(&i, None), Err(SolverError::EmptyFamily(..))));
    }

    #[test]
    fn no_families() {
        let c = min_hitting_set(&inst(1, &[]), None).unwrap();
        assert_eq!((c.value, c.nonempty_value), (0, 1));
        assert!(c.basis.is_empty());
    }

    #[test]
    fn small_graph_dimensions() {
        let p5 = Graph::path(5).unwrap();
        let c = metric_dimension(&p5).unwrap();
        assert_eq!((c.value, c.basis.as_slice()), (1, &[0][..]));
        assert_eq!(metric_dimension(&Graph::complete(4).unwrap()).unwrap().value, 3);
        assert_eq!(edge_metric_dimension(&Graph::complete(4).unwrap()).unwrap().value, 3);
        assert_eq!(edge_metric_dimension(&Graph::cycle(4).unwrap()).unwrap().value, 2);
        assert_eq!(metric_dimension(&Graph::cycle(6).unwrap()).unwrap().value, 2);
    }

    #[test]
    fn single_edge_conventions() {
        let p2 = Graph::path(2).unwrap();
        let e = edge_metric_dimension(&p2).unwrap();
        assert_eq!((e.value, e.nonempty_value), (0, 1));
        let one = Graph::empty(1).unwrap();
        let d = metric_dimension(&one).unwrap();
        assert_eq!((d.value, d.nonempty_value), (0, 1));
    }

    #[test]
    fn disconnected_input() {
        let g = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(metric_dimension(&g), Err(SolverError::Graph(GraphError::Disconnected)));
        assert!(build_edge_instance(&g).is_err());
    }

    #[test]
    fn tiny_budget_degrades_to_bounds() {
        let g = Graph::cycle(9).unwrap();
        let err = solve(&g, Target::Edges, SolverOptions::with_budget(1)).unwrap_err();
        let SolverError::BudgetExhausted { lower, upper, best, .. } = err else { panic!() };
        assert!(lower <= upper && best.len() == upper);
    }

    #[test]
    fn random_instances_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10);
            let families = rng.gen_range(1..=12);
            let sets: Vec<VertexSet> = (0..families)
                .map(|_| loop {
                    let s = rng.gen::<u64>() & crate::graph::full_set(n) & rng.gen::<u64>();
                    if s != 0 {
                        break s;
                    }
                })
                .collect();
            let i = DistinguisherInstance {
                n,
                families: sets
                    .iter()
                    .map(|&d| Family { pair: (Object::Vertex(0), Object::Vertex(1)), distinguishers: d })
                    .collect(),
            };
            let c = min_hitting_set(&i, None).unwrap();
            assert_eq!(c.value, brute_hitting(&i));
            assert!(i.is_hit_by(c.basis.mask()));
            // Lexicographically smallest among optimal sets.
            let lex_first = (0u64..1 << n)
                .filter(|&s| s.count_ones() as usize == c.value && i.is_hit_by(s))
                .map(|s| members(s).collect::<Vec<_>>())
                .min()
                .unwrap();
            assert_eq!(c.basis.as_slice(), lex_first.as_slice());
            assert!(c.lower_bound <= c.value && c.value <= c.greedy_upper);
        }
    }
}
