//! Closed-form upper and lower bounds relating dimension, diameter, and
//! subgraph sizes, evaluated exactly, plus a per-graph audit that checks
//! every applicable inequality.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::distance::bfs_all_pairs;
use crate::graph::Graph;
use crate::invariants::{
    chromatic_number, degeneracy, greedy_coloring, max_balanced_biclique, max_clique, DEFAULT_BICLIQUE_LIMIT,
    DEFAULT_CHROMATIC_LIMIT,
};
use crate::solver::{solve_with_distances, SolverError, SolverOptions, Target};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("dimension k must be at least 1")]
    ZeroDimension,
    #[error("diameter D must be at least 1")]
    ZeroDiameter,
    #[error("c = {c} outside [0, {d}]")]
    ParameterOutOfRange { c: u32, d: u32 },
}

/// Arbitrary-precision integer that serializes as a JSON number when it
/// fits in `u64` and as a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Big(pub BigUint);

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl fmt::Display for Big {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<usize> for Big {
    fn from(v: usize) -> Self {
        Big(BigUint::from(v))
    }
}

fn pow(base: u64, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

fn check(k: u32, d: u32) -> Result<(), BoundError> {
    if k == 0 {
        Err(BoundError::ZeroDimension)
    } else if d == 0 {
        Err(BoundError::ZeroDiameter)
    } else {
        Ok(())
    }
}

/// `(D - c)^k + k * sum_{i=0}^{c} (2i + 2)^(k-1)`.
pub fn edge_bound_general_c(k: u32, d: u32, c: u32) -> Result<BigUint, BoundError> {
    check(k, d)?;
    if c > d {
        return Err(BoundError::ParameterOutOfRange { c, d });
    }
    let sum: BigUint = (0..=c as u64).map(|i| pow(2 * i + 2, k - 1)).sum();
    Ok(pow((d - c) as u64, k) + sum * k)
}

/// `(floor(2D/3) + 1)^k + k * sum_{i=1}^{ceil(D/3)} (2i)^(k-1)`.
pub fn edge_bound_new(k: u32, d: u32) -> Result<BigUint, BoundError> {
    check(k, d)?;
    let sum: BigUint = (1..=d.div_ceil(3) as u64).map(|i| pow(2 * i, k - 1)).sum();
    let value = pow((2 * d / 3 + 1) as u64, k) + sum * k;
    debug_assert_eq!(Ok(&value), edge_bound_general_c(k, d, d.div_ceil(3) - 1).as_ref());
    Ok(value)
}

/// `C(k, 2) + k D^(k-1) + D^k`.
pub fn edge_bound_zubrilina(k: u32, d: u32) -> Result<BigUint, BoundError> {
    check(k, d)?;
    let pairs = BigUint::from(k as u64 * (k as u64 - 1) / 2);
    Ok(pairs + pow(d as u64, k - 1) * k + pow(d as u64, k))
}

/// `(floor(2D/3) + 1)^k + k * sum_{i=1}^{ceil(D/3)} (2i - 1)^(k-1)`.
pub fn vertex_bound_hernando(k: u32, d: u32) -> Result<BigUint, BoundError> {
    check(k, d)?;
    let sum: BigUint = (1..=d.div_ceil(3) as u64).map(|i| pow(2 * i - 1, k - 1)).sum();
    Ok(pow((2 * d / 3 + 1) as u64, k) + sum * k)
}

/// `(D + 1)^k`: vertices of a diameter-`D` subgraph when `dim = k`.
pub fn subgraph_vertex_bound(k: u32, d: u32) -> Result<BigUint, BoundError> {
    if k == 0 {
        return Err(BoundError::ZeroDimension);
    }
    Ok(pow(d as u64 + 1, k))
}

/// `(D + 1)^k`: edges of a diameter-`D` subgraph when `edim = k`.
pub fn subgraph_edge_bound(k: u32, d: u32) -> Result<BigUint, BoundError> {
    subgraph_vertex_bound(k, d)
}

/// A bound that may be a non-integer rational or radical; comparisons
/// against integers are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactBound {
    Integer(BigUint),
    /// `N / 2`.
    Half(BigUint),
    /// `sqrt(N)`.
    Sqrt(BigUint),
}

impl ExactBound {
    pub fn floor(&self) -> BigUint {
        match self {
            ExactBound::Integer(v) => v.clone(),
            ExactBound::Half(v) => v / 2u32,
            ExactBound::Sqrt(v) => v.sqrt(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            ExactBound::Integer(_) => true,
            ExactBound::Half(v) => (v % 2u32).is_zero(),
            ExactBound::Sqrt(v) => {
                let r = v.sqrt();
                &r * &r == *v
            }
        }
    }

    /// `x <= self`, exactly.
    pub fn admits(&self, x: &BigUint) -> bool {
        match self {
            ExactBound::Integer(v) => x <= v,
            ExactBound::Half(v) => x * 2u32 <= *v,
            ExactBound::Sqrt(v) => x * x <= *v,
        }
    }

    fn expression(&self) -> String {
        match self {
            ExactBound::Integer(v) => v.to_string(),
            ExactBound::Half(v) => format!("{v}/2"),
            ExactBound::Sqrt(v) => format!("sqrt({v})"),
        }
    }
}

impl Serialize for ExactBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactBound", 3)?;
        st.serialize_field("floor", &Big(self.floor()))?;
        st.serialize_field("exact_integer", &self.is_integer())?;
        st.serialize_field("expression", &self.expression())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Range {
    pub lower: Big,
    pub upper: ExactBound,
}

/// Extremal subgraph sizes for dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternBounds {
    pub k: u32,
    /// Largest `K_n` in a graph with `dim <= k`: exactly `2^k`.
    pub clique_md: Big,
    /// Largest `K_{1,n}` in a graph with `edim <= k`: exactly `2^k`.
    pub star_edim: Big,
    /// Largest `K_{1,n}` with `dim <= k`: in `[3^k - k - 1, 3^k - 1]`.
    pub star_md: Range,
    /// Largest `K_{n,n}` with `dim <= k`: in `[2^floor(k/2) - 1, 3^k / 2]`.
    pub biclique_md: Range,
    /// Largest `K_{n,n}` with `edim <= k`: in `[2^floor(k/2), 3^(k/2)]`.
    pub biclique_edim: Range,
}

pub fn pattern_bounds(k: u32) -> Result<PatternBounds, BoundError> {
    if k == 0 {
        return Err(BoundError::ZeroDimension);
    }
    let three_k = pow(3, k);
    let half_k = k / 2;
    Ok(PatternBounds {
        k,
        clique_md: Big(pow(2, k)),
        star_edim: Big(pow(2, k)),
        star_md: Range { lower: Big(&three_k - (k as u64 + 1)), upper: ExactBound::Integer(&three_k - 1u32) },
        biclique_md: Range { lower: Big(pow(2, half_k) - 1u32), upper: ExactBound::Half(three_k.clone()) },
        biclique_edim: Range { lower: Big(pow(2, half_k)), upper: ExactBound::Sqrt(three_k) },
    })
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub id: &'static str,
    pub lhs: Big,
    pub rhs: ExactBound,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub n: usize,
    pub edges: usize,
    pub diameter: u32,
    pub dim: usize,
    pub edim: usize,
    pub max_degree: usize,
    pub degeneracy: usize,
    pub clique: usize,
    pub biclique: Option<usize>,
    pub chromatic: usize,
    /// False when `chromatic` is a greedy upper bound.
    pub chromatic_exact: bool,
    pub inequalities: Vec<Inequality>,
}

impl AuditRecord {
    pub fn failures(&self) -> impl Iterator<Item = &Inequality> {
        self.inequalities.iter().filter(|i| !i.holds)
    }

    pub fn get(&self, id: &str) -> Option<&Inequality> {
        self.inequalities.iter().find(|i| i.id == id)
    }
}

/// Ids of every inequality [`audit_graph`] can evaluate.
pub const AUDIT_IDS: [&str; 15] = [
    "edge-bound-new",
    "edge-bound-zubrilina",
    "vertex-bound-hernando",
    "subgraph-vertex-bound",
    "subgraph-edge-bound",
    "corollary-edges-md",
    "corollary-edges-emd",
    "star-md",
    "star-edim",
    "clique-md",
    "biclique-md",
    "biclique-edim",
    "corollary-chromatic",
    "corollary-degeneracy-md",
    "corollary-degeneracy-emd",
];

pub fn audit_graph(g: &Graph, opts: SolverOptions) -> Result<AuditRecord, SolverError> {
    g.ensure_connected()?;
    let dm = bfs_all_pairs(g);
    let dim = solve_with_distances(g, &dm, Target::Vertices, opts)?.value;
    let edim = solve_with_distances(g, &dm, Target::Edges, opts)?.value;
    Ok(audit_with(g, dm.diameter().expect("connected"), dim, edim))
}

/// [`audit_graph`] with known dimensions and diameter.
pub fn audit_with(g: &Graph, diameter: u32, dim: usize, edim: usize) -> AuditRecord {
    let n = g.n();
    let edges = g.edge_count();
    let max_degree = g.max_degree();
    let degeneracy = degeneracy(g);
    let clique = max_clique(g).map(|c| c.len()).unwrap_or(0);
    let biclique = (n <= DEFAULT_BICLIQUE_LIMIT).then(|| max_balanced_biclique(g, n).expect("within limit"));
    let (chromatic, chromatic_exact) = if n <= DEFAULT_CHROMATIC_LIMIT {
        (chromatic_number(g).expect("within limit"), true)
    } else {
        let order: Vec<usize> = (0..n).collect();
        (greedy_coloring(g, &order).count, false)
    };

    let (k_md, k_emd, d) = (dim as u32, edim as u32, diameter);
    let big = |v: usize| BigUint::from(v);
    let mut out = Vec::new();
    let mut push = |id: &'static str, lhs: BigUint, rhs: ExactBound| {
        let holds = rhs.admits(&lhs);
        out.push(Inequality { id, lhs: Big(lhs), rhs, holds });
    };
    let int = ExactBound::Integer;

    // The closed forms need k >= 1 and D >= 1, i.e. n >= 2 for dim and
    // at least two edges for edim.
    if k_emd >= 1 && d >= 1 {
        push("edge-bound-new", big(edges), int(edge_bound_new(k_emd, d).expect("valid")));
        push("edge-bound-zubrilina", big(edges), int(edge_bound_zubrilina(k_emd, d).expect("valid")));
        push("subgraph-edge-bound", big(edges), int(subgraph_edge_bound(k_emd, d).expect("valid")));
    }
    if k_md >= 1 && d >= 1 {
        push("vertex-bound-hernando", big(n), int(vertex_bound_hernando(k_md, d).expect("valid")));
    }
    if k_md >= 1 {
        push("subgraph-vertex-bound", big(n), int(subgraph_vertex_bound(k_md, d).expect("valid")));
        let three = pow(3, k_md);
        push("corollary-edges-md", big(edges), ExactBound::Half((&three - 1u32) * n));
        push("star-md", big(max_degree), int(&three - 1u32));
        push("clique-md", big(clique), int(pow(2, k_md)));
        if let Some(m) = biclique {
            push("biclique-md", big(m), ExactBound::Half(three.clone()));
        }
        push("corollary-chromatic", big(chromatic), int(three.clone()));
        push("corollary-degeneracy-md", big(degeneracy), int(three - 1u32));
    }
    if k_emd >= 1 {
        let two = pow(2, k_emd);
        push("corollary-edges-emd", big(edges), ExactBound::Half(&two * n));
        push("star-edim", big(max_degree), int(two.clone()));
        if let Some(m) = biclique {
            push("biclique-edim", big(m), ExactBound::Sqrt(pow(3, k_emd)));
        }
        push("corollary-degeneracy-emd", big(degeneracy), int(two));
    }

    AuditRecord {
        n,
        edges,
        diameter,
        dim,
        edim,
        max_degree,
        degeneracy,
        clique,
        biclique,
        chromatic,
        chromatic_exact,
        inequalities: out,
    }
}

/// One row of the `(k, D)` bound table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: u32,
    pub d: u32,
    pub edge_bound_new: Big,
    pub edge_bound_zubrilina: Big,
    pub vertex_bound_hernando: Big,
    pub subgraph_bound: Big,
    /// `edge_bound_new <= edge_bound_zubrilina`; fails for some `k` at `D = 1`.
    pub sharpens: bool,
}

pub fn bound_row(k: u32, d: u32) -> Result<BoundRow, BoundError> {
    let new = edge_bound_new(k, d)?;
    let zub = edge_bound_zubrilina(k, d)?;
    Ok(BoundRow {
        k,
        d,
        sharpens: new <= zub,
        edge_bound_new: Big(new),
        edge_bound_zubrilina: Big(zub),
        vertex_bound_hernando: Big(vertex_bound_hernando(k, d)?),
        subgraph_bound: Big(subgraph_vertex_bound(k, d)?),
    })
}

pub fn bound_table(
    ks: impl IntoIterator<Item = u32>,
    ds: impl IntoIterator<Item = u32> + Clone,
) -> Result<Vec<BoundRow>, BoundError> {
    let mut rows = Vec::new();
    for k in ks {
        for d in ds.clone() {
            rows.push(bound_row(k, d)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn general_c_hand_values() {
        assert_eq!(edge_bound_general_c(1, 1, 0).unwrap(), n(2));
        assert_eq!(edge_bound_general_c(2, 3, 0).unwrap(), n(13));
        // c = D: (0)^k plus the full sum 2^2 + 4^2 + 6^2 + 8^2 for k = 3.
        assert_eq!(edge_bound_general_c(3, 3, 3).unwrap(), n(3 * (4 + 16 + 36 + 64)));
        assert_eq!(edge_bound_general_c(2, 3, 4), Err(BoundError::ParameterOutOfRange { c: 4, d: 3 }));
    }

    #[test]
    fn new_bound_hand_values() {
        assert_eq!(edge_bound_new(2, 3).unwrap(), n(13));
        assert_eq!(edge_bound_new(1, 3).unwrap(), n(4));
        assert_eq!(edge_bound_new(2, 2).unwrap(), n(8));
        assert_eq!(edge_bound_new(3, 1).unwrap(), n(13));
        assert_eq!(edge_bound_new(0, 3), Err(BoundError::ZeroDimension));
        assert_eq!(edge_bound_new(2, 0), Err(BoundError::ZeroDiameter));
    }

    #[test]
    fn zubrilina_hand_values() {
        assert_eq!(edge_bound_zubrilina(2, 3).unwrap(), n(16));
        assert_eq!(edge_bound_zubrilina(2, 2).unwrap(), n(9));
        for d in 1..10 {
            assert_eq!(edge_bound_zubrilina(1, d).unwrap(), n(1 + d as u64));
        }
    }

    #[test]
    fn hernando_hand_values() {
        assert_eq!(vertex_bound_hernando(2, 3).unwrap(), n(11));
        assert_eq!(vertex_bound_hernando(1, 3).unwrap(), n(4));
        assert_eq!(vertex_bound_hernando(2, 2).unwrap(), n(6));
    }

    #[test]
    fn subgraph_values() {
        assert_eq!(subgraph_vertex_bound(5, 0).unwrap(), n(1));
        assert_eq!(subgraph_vertex_bound(2, 2).unwrap(), n(9));
        assert_eq!(subgraph_edge_bound(3, 1).unwrap(), n(8));
    }

    #[test]
    fn pattern_values() {
        let p = pattern_bounds(2).unwrap();
        assert_eq!(p.clique_md.0, n(4));
        assert_eq!(p.star_edim.0, n(4));
        assert_eq!((p.star_md.lower.0.clone(), p.star_md.upper.floor()), (n(6), n(8)));
        assert_eq!((p.biclique_md.lower.0.clone(), p.biclique_md.upper.floor()), (n(1), n(4)));
        assert!(!p.biclique_md.upper.is_integer());
        assert_eq!(p.biclique_edim.upper.floor(), n(3));
        assert!(p.biclique_edim.upper.is_integer());
        assert_eq!(pattern_bounds(1).unwrap().clique_md.0, n(2));
        assert!(!pattern_bounds(3).unwrap().biclique_edim.upper.is_integer());
    }

    #[test]
    fn exact_comparisons() {
        let half = ExactBound::Half(n(9));
        assert!(half.admits(&n(4)) && !half.admits(&n(5)));
        let root = ExactBound::Sqrt(n(27));
        assert!(root.admits(&n(5)) && !root.admits(&n(6)));
    }

    #[test]
    fn general_c_matches_new_on_grid() {
        for k in 1..=8 {
            for d in 1..=30 {
                assert_eq!(edge_bound_new(k, d), edge_bound_general_c(k, d, d.div_ceil(3) - 1));
            }
        }
    }

    #[test]
    fn sharpening_holds_from_diameter_two() {
        for k in 1..=6 {
            for d in 2..=20 {
                assert!(edge_bound_new(k, d).unwrap() <= edge_bound_zubrilina(k, d).unwrap(), "k={k} D={d}");
            }
        }
        assert_eq!(edge_bound_new(2, 1).unwrap(), n(5));
        assert_eq!(edge_bound_zubrilina(2, 1).unwrap(), n(4));
        assert!(!bound_row(2, 1).unwrap().sharpens);
    }

    #[test]
    fn monotone_in_k_and_d() {
        type F = fn(u32, u32) -> Result<BigUint, BoundError>;
        let fs: [F; 4] = [edge_bound_new, edge_bound_zubrilina, vertex_bound_hernando, subgraph_vertex_bound];
        for f in fs {
            for k in 1..=8 {
                for d in 1..=30 {
                    let here = f(k, d).unwrap();
                    assert!(here <= f(k, d + 1).unwrap());
                    assert!(here <= f(k + 1, d).unwrap());
                }
            }
        }
    }

    #[test]
    fn audits() {
        let opts = SolverOptions::default();
        let c6 = audit_graph(&Graph::cycle(6).unwrap(), opts).unwrap();
        assert_eq!(c6.dim, 2);
        let e = c6.get("corollary-edges-md").unwrap();
        assert_eq!((e.lhs.0.clone(), e.rhs.floor(), e.holds), (n(6), n(24), true));
        let k4 = audit_graph(&Graph::complete(4).unwrap(), opts).unwrap();
        assert_eq!(k4.edim, 3);
        assert_eq!(k4.get("edge-bound-new").unwrap().rhs.floor(), n(13));
        let p5 = audit_graph(&Graph::path(5).unwrap(), opts).unwrap();
        let star = p5.get("star-md").unwrap();
        assert_eq!((p5.dim, star.lhs.0.clone(), star.rhs.floor()), (1, n(2), n(2)));
        for rec in [&c6, &k4, &p5] {
            assert_eq!(rec.failures().count(), 0);
        }
    }

    #[test]
    fn big_serializes_as_number_or_string() {
        assert_eq!(serde_json::to_string(&Big(n(42))).unwrap(), "42");
        let huge = Big(pow(10, 30));
        assert_eq!(serde_json::to_string(&huge).unwrap(), "\"1000000000000000000000000000000\"");
    }
}
