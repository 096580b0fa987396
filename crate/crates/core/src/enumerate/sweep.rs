//! Runs a registered statement over every connected graph in a size range.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::{connected_levels, EnumerateError, EnumerateOptions};
use crate::bounds::{audit_with, AuditRecord};
use crate::characterizations::{characterize, diameter_check_with, tuple_lemma_check, Characterization};
use crate::distance::{bfs_all_pairs, DistanceMatrix};
use crate::graph::Graph;
use crate::graph6;
use crate::invariants::max_clique;
use crate::solver::{solve_with_distances, SolverError, SolverOptions, Target};

/// Version of the JSON layout produced by [`SweepReport::to_json`].
pub const SCHEMA_VERSION: u32 = 1;

/// Smallest `n` swept by default; the characterizations start at 3.
pub const DEFAULT_MIN_N: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Char1Equiv,
    Char2Equiv,
    EqN2Equiv,
    TupleLemma,
    DiamLe5,
    DiamLe3kMinus1,
    EdgeBoundNew,
    EdgeBoundZubrilina,
    VertexBoundHernando,
    SubgraphBoundsSelf,
    CorollaryEdgesMd,
    CorollaryEdgesEmd,
    CorollaryChromatic,
    CorollaryDegeneracy,
    CliqueVsEdimExplore,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::Char1Equiv,
        TheoremId::Char2Equiv,
        TheoremId::EqN2Equiv,
        TheoremId::TupleLemma,
        TheoremId::DiamLe5,
        TheoremId::DiamLe3kMinus1,
        TheoremId::EdgeBoundNew,
        TheoremId::EdgeBoundZubrilina,
        TheoremId::VertexBoundHernando,
        TheoremId::SubgraphBoundsSelf,
        TheoremId::CorollaryEdgesMd,
        TheoremId::CorollaryEdgesEmd,
        TheoremId::CorollaryChromatic,
        TheoremId::CorollaryDegeneracy,
        TheoremId::CliqueVsEdimExplore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Char1Equiv => "char1-equiv",
            TheoremId::Char2Equiv => "char2-equiv",
            TheoremId::EqN2Equiv => "eq-n2-equiv",
            TheoremId::TupleLemma => "tuple-lemma",
            TheoremId::DiamLe5 => "diam-le-5",
            TheoremId::DiamLe3kMinus1 => "diam-le-3k-1",
            TheoremId::EdgeBoundNew => "edge-bound-new",
            TheoremId::EdgeBoundZubrilina => "edge-bound-zubrilina",
            TheoremId::VertexBoundHernando => "vertex-bound-hernando",
            TheoremId::SubgraphBoundsSelf => "subgraph-bounds-self",
            TheoremId::CorollaryEdgesMd => "corollary-edges-md",
            TheoremId::CorollaryEdgesEmd => "corollary-edges-emd",
            TheoremId::CorollaryChromatic => "corollary-chromatic",
            TheoremId::CorollaryDegeneracy => "corollary-degeneracy",
            TheoremId::CliqueVsEdimExplore => "clique-vs-edim-explore",
        }
    }

    /// Audit inequalities checked by a bound statement.
    fn audit_ids(self) -> &'static [&'static str] {
        match self {
            TheoremId::EdgeBoundNew => &["edge-bound-new"],
            TheoremId::EdgeBoundZubrilina => &["edge-bound-zubrilina"],
            TheoremId::VertexBoundHernando => &["vertex-bound-hernando"],
            TheoremId::SubgraphBoundsSelf => &["subgraph-vertex-bound", "subgraph-edge-bound"],
            TheoremId::CorollaryEdgesMd => &["corollary-edges-md"],
            TheoremId::CorollaryEdgesEmd => &["corollary-edges-emd"],
            TheoremId::CorollaryChromatic => &["corollary-chromatic"],
            TheoremId::CorollaryDegeneracy => &["corollary-degeneracy-md", "corollary-degeneracy-emd"],
            _ => &[],
        }
    }

    /// Exploratory ids produce a data table and never fail.
    pub fn is_exploratory(self) -> bool {
        self == TheoremId::CliqueVsEdimExplore
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| SweepError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("empty size range {n_min}..={n_max}")]
    EmptyRange { n_min: usize, n_max: usize },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub n_min: usize,
    pub solver: SolverOptions,
    pub enumerate: EnumerateOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { n_min: DEFAULT_MIN_N, solver: SolverOptions::default(), enumerate: EnumerateOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCount {
    pub n: usize,
    pub graphs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub graph6: String,
    pub details: Value,
}

/// One row of the exploratory clique table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueRow {
    pub edim: usize,
    pub graphs: usize,
    pub max_clique: usize,
    /// First graph in enumeration order attaining `max_clique`.
    pub example: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub theorem_id: TheoremId,
    pub n_min: usize,
    pub n_max: usize,
    pub counts: Vec<LevelCount>,
    pub graphs_checked: usize,
    /// Graphs on which the statement was not vacuous.
    pub applicable: usize,
    pub failures: Vec<Failure>,
    pub solver_budget_exhaustions: usize,
    pub budget_exhausted: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Vec<CliqueRow>>,
    /// Wall time; left out of [`SweepReport::to_json`] unless asked for.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.solver_budget_exhaustions == 0
    }

    /// Pretty JSON. Timing is excluded by default so reports are
    /// byte-identical across runs and thread counts.
    pub fn to_json(&self, include_timing: bool) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if include_timing {
            value["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}

pub fn sweep(id: TheoremId, n_max: usize, opts: SweepOptions) -> Result<SweepReport, SweepError> {
    Ok(sweep_many(&[id], n_max, opts)?.pop().expect("one report per id"))
}

/// Several statements over one enumeration, sharing the per-graph solver runs.
pub fn sweep_many(ids: &[TheoremId], n_max: usize, opts: SweepOptions) -> Result<Vec<SweepReport>, SweepError> {
    let start = Instant::now();
    if n_max < opts.n_min || opts.n_min == 0 {
        return Err(SweepError::EmptyRange { n_min: opts.n_min, n_max });
    }
    let levels = connected_levels(n_max, opts.enumerate)?;
    let graphs: Vec<Graph> = levels[opts.n_min - 1..].iter().flatten().map(|f| f.to_graph()).collect();
    let verdicts: Vec<Vec<Verdict>> = graphs
        .par_iter()
        .map(|g| {
            let ctx = Ctx::new(g, opts.solver);
            ids.iter().map(|&id| ctx.evaluate(id)).collect()
        })
        .collect();

    let counts: Vec<LevelCount> = (opts.n_min..=n_max).map(|n| LevelCount { n, graphs: levels[n - 1].len() }).collect();
    let elapsed = start.elapsed();
    let reports = ids
        .iter()
        .enumerate()
        .map(|(col, &id)| {
            let mut report = SweepReport {
                schema_version: SCHEMA_VERSION,
                theorem_id: id,
                n_min: opts.n_min,
                n_max,
                counts: counts.clone(),
                graphs_checked: graphs.len(),
                applicable: 0,
                failures: Vec::new(),
                solver_budget_exhaustions: 0,
                budget_exhausted: Vec::new(),
                data: None,
                elapsed,
            };
            let mut table: Vec<CliqueRow> = Vec::new();
            for (g, row) in graphs.iter().zip(&verdicts) {
                match &row[col] {
                    Verdict::Pass => report.applicable += 1,
                    Verdict::Vacuous => {}
                    Verdict::Fail(details) => {
                        report.applicable += 1;
                        report.failures.push(Failure { graph6: graph6::encode(g), details: details.clone() });
                    }
                    Verdict::Exhausted => {
                        report.solver_budget_exhaustions += 1;
                        report.budget_exhausted.push(graph6::encode(g));
                    }
                    &Verdict::Clique { edim, clique } => {
                        report.applicable += 1;
                        if table.len() <= edim {
                            table.resize_with(edim + 1, || CliqueRow {
                                edim: 0,
                                graphs: 0,
                                max_clique: 0,
                                example: String::new(),
                            });
                        }
                        let entry = &mut table[edim];
                        entry.edim = edim;
                        entry.graphs += 1;
                        if clique > entry.max_clique {
                            entry.max_clique = clique;
                            entry.example = graph6::encode(g);
                        }
                    }
                }
            }
            if id.is_exploratory() {
                report.data = Some(table.into_iter().filter(|r| r.graphs > 0).collect());
            }
            report
        })
        .collect();
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq)]
enum Verdict {
    Pass,
    Fail(Value),
    Vacuous,
    Exhausted,
    Clique { edim: usize, clique: usize },
}

/// Per-graph values computed on first use.
struct Ctx<'a> {
    g: &'a Graph,
    dm: DistanceMatrix,
    solver: SolverOptions,
    dim: OnceCell<Option<usize>>,
    edim: OnceCell<Option<usize>>,
    chars: OnceCell<Characterization>,
    audit: OnceCell<Option<AuditRecord>>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a Graph, solver: SolverOptions) -> Self {
        Ctx {
            g,
            dm: bfs_all_pairs(g),
            solver,
            dim: OnceCell::new(),
            edim: OnceCell::new(),
            chars: OnceCell::new(),
            audit: OnceCell::new(),
        }
    }

    fn solve(&self, target: Target) -> Option<usize> {
        match solve_with_distances(self.g, &self.dm, target, self.solver) {
            Ok(cert) => Some(cert.value),
            Err(SolverError::BudgetExhausted { .. }) => None,
            Err(e) => panic!("enumerated graphs are connected: {e}"),
        }
    }

    fn dim(&self) -> Option<usize> {
        *self.dim.get_or_init(|| self.solve(Target::Vertices))
    }

    fn edim(&self) -> Option<usize> {
        *self.edim.get_or_init(|| self.solve(Target::Edges))
    }

    fn chars(&self) -> &Characterization {
        self.chars.get_or_init(|| characterize(self.g, &self.dm).expect("n >= 3 and connected"))
    }

    fn audit(&self) -> Option<&AuditRecord> {
        self.audit
            .get_or_init(|| {
                let (dim, edim) = (self.dim()?, self.edim()?);
                Some(audit_with(self.g, self.dm.diameter().expect("connected"), dim, edim))
            })
            .as_ref()
    }

    fn evaluate(&self, id: TheoremId) -> Verdict {
        let n = self.g.n();
        let needs_chars = matches!(id, TheoremId::Char1Equiv | TheoremId::Char2Equiv | TheoremId::EqN2Equiv);
        if needs_chars && n < 3 {
            return Verdict::Vacuous;
        }
        let Some(edim) = self.edim() else {
            return Verdict::Exhausted;
        };
        let equivalence = |predicate: bool, expected: bool, what: &str| {
            if predicate == expected {
                Verdict::Pass
            } else {
                Verdict::Fail(
                    json!({ "n": n, "edim": edim, "predicate": predicate, "expected": expected, "statement": what }),
                )
            }
        };
        match id {
            TheoremId::Char1Equiv => equivalence(self.chars().edim_n1, edim + 1 == n, "edim = n - 1"),
            TheoremId::Char2Equiv => equivalence(self.chars().edim_ge_n2, edim + 2 >= n, "edim >= n - 2"),
            TheoremId::EqN2Equiv => equivalence(self.chars().edim_eq_n2(), edim + 2 == n, "edim = n - 2"),
            TheoremId::TupleLemma => {
                let check = tuple_lemma_check(self.g, n - edim).expect("connected");
                if check.vacuous {
                    Verdict::Vacuous
                } else if check.holds {
                    Verdict::Pass
                } else {
                    Verdict::Fail(json!({ "k": n - edim, "violating": check.violating }))
                }
            }
            TheoremId::DiamLe5 => {
                let check = diameter_check_with(self.g, &self.dm, edim);
                match check.within_5 {
                    None => Verdict::Vacuous,
                    Some(true) => Verdict::Pass,
                    Some(false) => Verdict::Fail(json!({ "edim": edim, "diameter": check.diameter })),
                }
            }
            TheoremId::DiamLe3kMinus1 => {
                let check = diameter_check_with(self.g, &self.dm, edim);
                if check.within_3k_minus_1 {
                    Verdict::Pass
                } else {
                    Verdict::Fail(json!({ "edim": edim, "k": check.k, "diameter": check.diameter }))
                }
            }
            TheoremId::CliqueVsEdimExplore => {
                let clique = max_clique(self.g).expect("n within clique limit").len();
                Verdict::Clique { edim, clique }
            }
            _ => {
                let Some(audit) = self.audit() else {
                    return Verdict::Exhausted;
                };
                let checked: Vec<_> = id.audit_ids().iter().filter_map(|a| audit.get(a)).collect();
                if checked.is_empty() {
                    return Verdict::Vacuous;
                }
                let failed: Vec<_> = checked.into_iter().filter(|i| !i.holds).collect();
                if failed.is_empty() {
                    Verdict::Pass
                } else {
                    Verdict::Fail(json!({
                        "dim": audit.dim,
                        "edim": audit.edim,
                        "diameter": audit.diameter,
                        "violated": failed,
                    }))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!("nope".parse::<TheoremId>(), Err(SweepError::UnknownTheorem("nope".into())));
    }

    #[test]
    fn small_sweeps_pass() {
        for id in TheoremId::ALL {
            let report = sweep(id, 5, SweepOptions::default()).unwrap();
            assert!(report.passed(), "{id}: {:?}", report.failures);
            assert_eq!(report.graphs_checked, 2 + 6 + 21);
        }
    }

    #[test]
    fn explore_table_shape() {
        let report = sweep(TheoremId::CliqueVsEdimExplore, 5, SweepOptions::default()).unwrap();
        let data = report.data.unwrap();
        assert_eq!(data.iter().map(|r| r.graphs).sum::<usize>(), 29);
        // K_5 has edim 4 and is the unique largest clique.
        assert!(data.iter().any(|r| r.edim == 4 && r.max_clique == 5));
    }

    #[test]
    fn json_excludes_timing_by_default() {
        let report = sweep(TheoremId::DiamLe5, 4, SweepOptions::default()).unwrap();
        let plain = report.to_json(false);
        assert!(plain.contains("\"schema_version\": 1"));
        assert!(!plain.contains("elapsed_ms"));
        assert!(report.to_json(true).contains("elapsed_ms"));
    }

    #[test]
    fn empty_range_rejected() {
        let opts = SweepOptions { n_min: 5, ..SweepOptions::default() };
        assert_eq!(sweep(TheoremId::DiamLe5, 4, opts), Err(SweepError::EmptyRange { n_min: 5, n_max: 4 }));
    }
}
