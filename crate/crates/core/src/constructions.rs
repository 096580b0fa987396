//! Generators for the extremal graphs behind the pattern-avoidance bounds,
//! each with its landmark certificate and labeled vertex roles.
//!
//! Vertex numbering is fixed: the labeled block (clique, leaves, or left then
//! right side) comes first in label order, then the center if any, then the
//! `u`, `r` and `s` blocks in index order. Labels are base-2 or base-3 digit
//! strings written most significant digit first; digit 1 is the least
//! significant position. Deleted vertices are removed after generation and
//! the remaining ids are compacted in order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::bfs_all_pairs;
use crate::graph::{full_set, Graph, GraphError, MAX_VERTICES};
use crate::metric::{
    edge_resolution, vertex_distance_vector, vertex_resolution, LandmarkSet, Resolution, ResolutionWitness,
};
use crate::solver::Target;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family}: parameter {k} outside {min}..={max}")]
    ParameterOutOfRange { family: FamilyKind, k: usize, min: usize, max: usize },
    #[error("grid needs at least one dimension")]
    NoDimensions,
    #[error("grid side length {0} is below 2")]
    SideTooShort(usize),
    #[error("grid has {0} vertices, at most {MAX_VERTICES} are supported")]
    GridTooLarge(usize),
    #[error("{family}({k}) is disconnected after deletion")]
    Disconnected { family: FamilyKind, k: usize },
    #[error("{family}({k}): landmarks fail to resolve {} and {}", .witness.a, .witness.b)]
    CertificateFails { family: FamilyKind, k: usize, witness: ResolutionWitness },
    #[error("{family}({k}): vertex {vertex} adjacency contradicts its label")]
    LabelMismatch { family: FamilyKind, k: usize, vertex: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    MdComplete,
    EdimStar,
    MdStar,
    MdBiclique,
    EdimBiclique,
    Grid,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::MdComplete,
        FamilyKind::EdimStar,
        FamilyKind::MdStar,
        FamilyKind::MdBiclique,
        FamilyKind::EdimBiclique,
        FamilyKind::Grid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::MdComplete => "md-complete",
            FamilyKind::EdimStar => "edim-star",
            FamilyKind::MdStar => "md-star",
            FamilyKind::MdBiclique => "md-biclique",
            FamilyKind::EdimBiclique => "edim-biclique",
            FamilyKind::Grid => "grid",
        }
    }

    /// Admissible `k` for the parameterized families.
    pub fn k_range(self) -> Option<(usize, usize)> {
        match self {
            FamilyKind::MdComplete | FamilyKind::EdimStar => Some((1, 5)),
            FamilyKind::MdStar => Some((1, 3)),
            FamilyKind::MdBiclique | FamilyKind::EdimBiclique => Some((2, 7)),
            FamilyKind::Grid => None,
        }
    }

    pub fn target(self) -> Target {
        match self {
            FamilyKind::MdComplete | FamilyKind::MdStar | FamilyKind::MdBiclique => Target::Vertices,
            _ => Target::Edges,
        }
    }

    fn check_k(self, k: usize) -> Result<(), ConstructionError> {
        let (min, max) = self.k_range().expect("parameterized family");
        if (min..=max).contains(&k) {
            Ok(())
        } else {
            Err(ConstructionError::ParameterOutOfRange { family: self, k, min, max })
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyKind::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown construction family {s:?}"))
    }
}

/// Role of a vertex in a construction. Labeled roles carry the integer
/// value of their digit string; auxiliary roles carry their 1-based index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "role", content = "index")]
pub enum Role {
    Clique(usize),
    Leaf(usize),
    Center,
    Left(usize),
    Right(usize),
    U(usize),
    R(usize),
    S(usize),
    Point(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletedVertex {
    pub role: Role,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionOutput {
    pub family: FamilyKind,
    /// `k` for the parameterized families, the dimension count for grids.
    pub k: usize,
    #[serde(rename = "graph6")]
    pub graph: Graph,
    pub landmarks: LandmarkSet,
    pub target: Target,
    pub roles: Vec<Role>,
    /// Digit string per vertex, `None` for unlabeled vertices.
    pub labels: Vec<Option<String>>,
    pub deleted: Vec<DeletedVertex>,
}

/// `i`-th digit (1-based, least significant first) of `value` in `base`.
pub fn digit(value: usize, i: usize, base: usize) -> usize {
    value / base.pow(i as u32 - 1) % base
}

/// Most-significant-first digit string of `value` with `k` digits.
pub fn label_string(value: usize, k: usize, base: usize) -> String {
    (1..=k).rev().map(|i| char::from_digit(digit(value, i, base) as u32, 10).unwrap()).collect()
}

struct Builder {
    roles: Vec<Role>,
    labels: Vec<Option<String>>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder { roles: Vec::new(), labels: Vec::new(), edges: Vec::new() }
    }

    fn add(&mut self, role: Role, label: Option<String>) -> usize {
        self.roles.push(role);
        self.labels.push(label);
        self.roles.len() - 1
    }

    fn add_block(
        &mut self,
        count: usize,
        role: impl Fn(usize) -> Role,
        label: impl Fn(usize) -> Option<String>,
    ) -> usize {
        let first = self.roles.len();
        for j in 0..count {
            self.add(role(j), label(j));
        }
        first
    }

    fn graph(&self) -> Result<Graph, GraphError> {
        Graph::from_edge_list(self.roles.len(), self.edges.iter().copied())
    }
}

type Trimmed = (Graph, LandmarkSet, Vec<Role>, Vec<Option<String>>, Vec<DeletedVertex>);

/// Keeps vertices outside `delete`, compacting ids and remapping landmarks.
fn delete_vertices(b: Builder, landmarks: &[usize], delete: &[usize]) -> Result<Trimmed, ConstructionError> {
    let g = b.graph()?;
    let keep = delete.iter().fold(full_set(g.n()), |m, &v| m & !(1 << v));
    let remap: Vec<Option<usize>> = {
        let mut next = 0;
        (0..g.n())
            .map(|v| {
                (keep >> v & 1 == 1).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let deleted = delete
        .iter()
        .map(|&v| DeletedVertex { role: b.roles[v].clone(), label: b.labels[v].clone().unwrap_or_default() })
        .collect();
    let roles = (0..g.n()).filter(|&v| remap[v].is_some()).map(|v| b.roles[v].clone()).collect();
    let labels = (0..g.n()).filter(|&v| remap[v].is_some()).map(|v| b.labels[v].clone()).collect();
    let h = g.induced(keep);
    let lm = LandmarkSet::new(landmarks.iter().map(|&v| remap[v].expect("landmarks are kept")), h.n())
        .expect("remapped ids are in range");
    Ok((h, lm, roles, labels, deleted))
}

/// `K_{2^k}` with binary labels plus `u_1..u_k`, `u_i` adjacent to the
/// clique vertices whose `i`-th digit is 0. Landmarks `{u_1..u_k}`.
pub fn md_complete(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    FamilyKind::MdComplete.check_k(k)?;
    let m = 1 << k;
    let mut b = Builder::new();
    b.add_block(m, Role::Clique, |j| Some(label_string(j, k, 2)));
    let u = b.add_block(k, |i| Role::U(i + 1), |_| None);
    for x in 0..m {
        for y in x + 1..m {
            b.edges.push((x, y));
        }
    }
    for i in 1..=k {
        for v in (0..m).filter(|&v| digit(v, i, 2) == 0) {
            b.edges.push((u + i - 1, v));
        }
    }
    finish(FamilyKind::MdComplete, k, b, (u..u + k).collect(), &[])
}

/// `K_{1,2^k}` with center `c` and binary leaf labels plus `u_1..u_k`,
/// `u_i` adjacent to the leaves whose `i`-th digit is 0.
pub fn edim_star(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    FamilyKind::EdimStar.check_k(k)?;
    let m = 1 << k;
    let mut b = Builder::new();
    b.add_block(m, Role::Leaf, |j| Some(label_string(j, k, 2)));
    let c = b.add(Role::Center, None);
    let u = b.add_block(k, |i| Role::U(i + 1), |_| None);
    for v in 0..m {
        b.edges.push((c, v));
    }
    for i in 1..=k {
        for v in (0..m).filter(|&v| digit(v, i, 2) == 0) {
            b.edges.push((u + i - 1, v));
        }
    }
    finish(FamilyKind::EdimStar, k, b, (u..u + k).collect(), &[])
}

/// [`md_star`] without the post-deletion verification.
pub fn md_star_unchecked(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    FamilyKind::MdStar.check_k(k)?;
    let m = 3usize.pow(k as u32);
    let mut b = Builder::new();
    b.add_block(m, Role::Leaf, |j| Some(label_string(j, k, 3)));
    let c = b.add(Role::Center, None);
    let r = b.add_block(k, |i| Role::R(i + 1), |_| None);
    let s = b.add_block(k, |i| Role::S(i + 1), |_| None);
    for v in 0..m {
        b.edges.push((c, v));
    }
    for i in 1..=k {
        b.edges.push((r + i - 1, s + i - 1));
        for v in 0..m {
            match digit(v, i, 3) {
                0 => b.edges.push((s + i - 1, v)),
                1 => b.edges.push((r + i - 1, v)),
                _ => {}
            }
        }
    }
    // Leaves colliding with the center or some r_i, on the original graph.
    let g = b.graph()?;
    let dm = bfs_all_pairs(&g);
    let landmarks: Vec<usize> = (s..s + k).collect();
    let lm = LandmarkSet::new(landmarks.iter().copied(), g.n()).expect("in range");
    let reserved: Vec<_> = std::iter::once(c).chain(r..r + k).map(|x| vertex_distance_vector(&dm, x, &lm)).collect();
    let delete: Vec<usize> = (0..m).filter(|&v| reserved.contains(&vertex_distance_vector(&dm, v, &lm))).collect();
    assemble(FamilyKind::MdStar, k, b, landmarks, &delete)
}

/// `K_{1,3^k}` with ternary leaf labels plus `r_1..r_k, s_1..s_k`; `s_i` is
/// adjacent to leaves with `i`-th digit 0, `r_i` to those with digit 1, and
/// `r_i s_i` is an edge. Leaves whose landmark vector collides with the
/// center's or some `r_i`'s are deleted, and the certificate is re-checked
/// on the resulting graph.
pub fn md_star(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    let out = md_star_unchecked(k)?;
    out.verify()?;
    Ok(out)
}

fn biclique_base(family: FamilyKind, k: usize) -> Result<(Builder, Vec<usize>, usize), ConstructionError> {
    family.check_k(k)?;
    let h = k / 2;
    let m = 1 << h;
    let mut b = Builder::new();
    let left = b.add_block(m, Role::Left, |j| Some(label_string(j, h, 2)));
    let right = b.add_block(m, Role::Right, |j| Some(label_string(j, h, 2)));
    let u = b.add_block(h, |i| Role::U(i + 1), |_| None);
    let r = b.add_block(h, |i| Role::R(i + 1), |_| None);
    for x in 0..m {
        for y in 0..m {
            b.edges.push((left + x, right + y));
        }
    }
    for i in 1..=h {
        for v in (0..m).filter(|&v| digit(v, i, 2) == 0) {
            b.edges.push((u + i - 1, left + v));
            b.edges.push((r + i - 1, right + v));
        }
    }
    Ok((b, (u..r + h).collect(), m))
}

/// `K_{m,m}` with `m = 2^⌊k/2⌋`, both sides binary-labeled, plus
/// `u_1..u_h` on the left and `r_1..r_h` on the right (`h = ⌊k/2⌋`). The
/// all-ones vertex on each side is deleted. Landmarks are all `u_i, r_i`.
pub fn md_biclique(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    let (b, landmarks, m) = biclique_base(FamilyKind::MdBiclique, k)?;
    let out = assemble(FamilyKind::MdBiclique, k, b, landmarks, &[m - 1, 2 * m - 1])?;
    out.verify()?;
    Ok(out)
}

/// The [`md_biclique`] graph before deletion, certified for edges.
pub fn edim_biclique(k: usize) -> Result<ConstructionOutput, ConstructionError> {
    let (b, landmarks, _) = biclique_base(FamilyKind::EdimBiclique, k)?;
    finish(FamilyKind::EdimBiclique, k, b, landmarks, &[])
}

fn assemble(
    family: FamilyKind,
    k: usize,
    b: Builder,
    landmarks: Vec<usize>,
    delete: &[usize],
) -> Result<ConstructionOutput, ConstructionError> {
    let (graph, landmarks, roles, labels, deleted) = delete_vertices(b, &landmarks, delete)?;
    Ok(ConstructionOutput { family, k, graph, landmarks, target: family.target(), roles, labels, deleted })
}

fn finish(
    family: FamilyKind,
    k: usize,
    b: Builder,
    landmarks: Vec<usize>,
    delete: &[usize],
) -> Result<ConstructionOutput, ConstructionError> {
    let out = assemble(family, k, b, landmarks, delete)?;
    debug_assert_eq!(out.verify(), Ok(()));
    Ok(out)
}

fn grid_shape(dims: &[usize]) -> Result<usize, ConstructionError> {
    if dims.is_empty() {
        return Err(ConstructionError::NoDimensions);
    }
    if let Some(&r) = dims.iter().find(|&&r| r < 2) {
        return Err(ConstructionError::SideTooShort(r));
    }
    let total = dims.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r)).unwrap_or(usize::MAX);
    if total > MAX_VERTICES {
        return Err(ConstructionError::GridTooLarge(total));
    }
    Ok(total)
}

/// Id of a lattice point; the first coordinate varies fastest.
pub fn grid_index(dims: &[usize], point: &[usize]) -> usize {
    point.iter().zip(dims).rev().fold(0, |acc, (&x, &r)| acc * r + x)
}

pub fn grid_point(dims: &[usize], mut id: usize) -> Vec<usize> {
    dims.iter()
        .map(|&r| {
            let x = id % r;
            id /= r;
            x
        })
        .collect()
}

/// `P_{r_1} x ... x P_{r_d}` on integer points with `0 <= x_i < r_i`.
pub fn grid(dims: &[usize]) -> Result<Graph, ConstructionError> {
    let total = grid_shape(dims)?;
    let mut g = Graph::empty(total)?;
    let mut stride = 1;
    for &r in dims {
        for id in 0..total {
            if id / stride % r + 1 < r {
                g.add_edge(id, id + stride)?;
            }
        }
        stride *= r;
    }
    Ok(g)
}

/// The origin and, for `j < d`, the point with `x_j = r_j - 1` and all
/// other coordinates 0.
pub fn grid_edge_landmarks(dims: &[usize]) -> Result<LandmarkSet, ConstructionError> {
    let total = grid_shape(dims)?;
    let d = dims.len();
    let ids = std::iter::once(0).chain((0..d - 1).map(|j| {
        let mut p = vec![0; d];
        p[j] = dims[j] - 1;
        grid_index(dims, &p)
    }));
    Ok(LandmarkSet::new(ids, total).expect("points lie in the grid"))
}

pub fn grid_construction(dims: &[usize]) -> Result<ConstructionOutput, ConstructionError> {
    let graph = grid(dims)?;
    let landmarks = grid_edge_landmarks(dims)?;
    let roles = (0..graph.n()).map(|v| Role::Point(grid_point(dims, v))).collect();
    let labels = (0..graph.n())
        .map(|v| {
            let p: Vec<String> = grid_point(dims, v).iter().map(|x| x.to_string()).collect();
            Some(format!("({})", p.join(",")))
        })
        .collect();
    Ok(ConstructionOutput {
        family: FamilyKind::Grid,
        k: dims.len(),
        graph,
        landmarks,
        target: Target::Edges,
        roles,
        labels,
        deleted: Vec::new(),
    })
}

impl ConstructionOutput {
    fn label_value(&self, v: usize) -> Option<usize> {
        match self.roles[v] {
            Role::Clique(x) | Role::Leaf(x) | Role::Left(x) | Role::Right(x) => Some(x),
            _ => None,
        }
    }

    fn base(&self) -> usize {
        if self.family == FamilyKind::MdStar {
            3
        } else {
            2
        }
    }

    /// Whether `aux` should be adjacent to labeled vertex `v`.
    fn expected_link(&self, aux: &Role, v: usize) -> Option<bool> {
        let x = self.label_value(v)?;
        let base = self.base();
        let side = &self.roles[v];
        Some(match (self.family, aux) {
            (FamilyKind::MdComplete | FamilyKind::EdimStar, Role::U(i)) => digit(x, *i, base) == 0,
            (FamilyKind::MdStar, Role::S(i)) => digit(x, *i, base) == 0,
            (FamilyKind::MdStar, Role::R(i)) => digit(x, *i, base) == 1,
            (FamilyKind::MdBiclique | FamilyKind::EdimBiclique, Role::U(i)) => {
                matches!(side, Role::Left(_)) && digit(x, *i, base) == 0
            }
            (FamilyKind::MdBiclique | FamilyKind::EdimBiclique, Role::R(i)) => {
                matches!(side, Role::Right(_)) && digit(x, *i, base) == 0
            }
            _ => return None,
        })
    }

    /// Every labeled vertex is adjacent to exactly the auxiliary vertices its
    /// digits call for.
    pub fn check_labels(&self) -> Result<(), ConstructionError> {
        for aux in 0..self.graph.n() {
            for v in 0..self.graph.n() {
                if let Some(want) = self.expected_link(&self.roles[aux], v) {
                    if self.graph.has_edge(aux, v) != want {
                        return Err(ConstructionError::LabelMismatch { family: self.family, k: self.k, vertex: v });
                    }
                }
            }
        }
        Ok(())
    }

    /// Recomputes distances on the final graph and checks connectivity, the
    /// landmark certificate and the label adjacency rule.
    pub fn verify(&self) -> Result<(), ConstructionError> {
        let (family, k) = (self.family, self.k);
        if !self.graph.is_connected() {
            return Err(ConstructionError::Disconnected { family, k });
        }
        let dm = bfs_all_pairs(&self.graph);
        let res = match self.target {
            Target::Vertices => vertex_resolution(&dm, &self.landmarks),
            Target::Edges => edge_resolution(&dm, &self.graph.edges(), &self.landmarks),
        };
        if let Resolution::Collision(witness) = res {
            return Err(ConstructionError::CertificateFails { family, k, witness });
        }
        self.check_labels()
    }

    pub fn center(&self) -> Option<usize> {
        self.roles.iter().position(|r| *r == Role::Center)
    }

    pub fn vertices_with(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| pred(&self.roles[v])).collect()
    }
}
