//! Exact metric dimension and edge metric dimension of small graphs, the
//! extremal constructions that realize the known pattern-avoidance bounds,
//! decision procedures for `edim = n - 1` and `edim >= n - 2`, closed-form
//! bound evaluators, and an exhaustive small-graph sweep harness.

pub mod bounds;
pub mod characterizations;
pub mod constructions;
pub mod distance;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod metric;
pub mod solver;

pub use bounds::{audit_graph, pattern_bounds, AuditRecord, BoundError, ExactBound, PatternBounds};
pub use characterizations::{
    char_edim_eq_n2, char_edim_ge_n2, char_edim_n1, diameter_theorem_check, non_mutual_neighbors, tuple_lemma_check,
    CharacterizationError,
};
pub use distance::{bfs_all_pairs, diameter, edge_vertex_distance, DistanceMatrix, UNREACHABLE};
pub use enumerate::canon::{canonical_form, CanonicalForm};
pub use enumerate::sweep::{sweep, sweep_many, SweepError, SweepOptions, SweepReport, TheoremId};
pub use enumerate::{enumerate_connected, EnumerateError, EnumerateOptions};
pub use graph::{Edge, Graph, GraphError, VertexSet, MAX_VERTICES};
pub use metric::{
    edge_distance_vector, is_edge_resolving, is_vertex_resolving, vertex_distance_vector, DistanceVector, LandmarkSet,
    Object, Resolution, ResolutionWitness,
};
pub use solver::{edge_metric_dimension, metric_dimension, DimensionCertificate, SolverError, SolverOptions, Target};
