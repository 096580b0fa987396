use std::path::Path;

use metricdim::bounds::{audit_graph, bound_table, pattern_bounds, AuditRecord, BoundRow, ExactBound};
use metricdim::characterizations::{char_edim_ge_n2, char_edim_n1, diameter_check_with};
use metricdim::constructions::{
    edim_biclique, edim_star, grid_construction, md_biclique, md_complete, md_star_unchecked, ConstructionError,
    ConstructionOutput, FamilyKind,
};
use metricdim::enumerate::sweep::{sweep, SweepOptions, SweepReport};
use metricdim::enumerate::EnumerateOptions;
use metricdim::solver::solve;
use metricdim::{
    bfs_all_pairs, graph6, is_edge_resolving, is_vertex_resolving, DimensionCertificate, Graph, GraphError,
    LandmarkSet, Resolution, SolverError, SolverOptions, Target, TheoremId,
};
use serde_json::{json, Value};

use crate::input::{parse_landmarks, parse_range, read_graph, InputFormat};
use crate::render::{csv, envelope, fields, table, OutputFormat, Rendered};

/// Largest construction the `--check` path also hands to the exact solver.
const CHECK_SOLVER_MAX_N: usize = 20;

pub struct Context {
    pub output: OutputFormat,
    pub budget: Option<u64>,
}

impl Context {
    fn solver(&self) -> SolverOptions {
        SolverOptions { budget: self.budget }
    }
}

pub enum Status {
    Pass,
    PropertyFail,
}

impl Status {
    fn from_pass(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::PropertyFail
        }
    }
}

pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl Exit {
    fn usage(message: impl ToString) -> Self {
        Exit { code: 2, message: message.to_string() }
    }
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit::usage(format!("{e:#}"))
    }
}

impl From<GraphError> for Exit {
    fn from(e: GraphError) -> Self {
        let code = if e == GraphError::Disconnected { 3 } else { 2 };
        Exit { code, message: e.to_string() }
    }
}

/// Maps solver errors to exit codes; budget exhaustion also prints the
/// bracketing bounds on stdout.
fn solver_exit(ctx: &Context, e: SolverError) -> Exit {
    match e {
        SolverError::Graph(g) => g.into(),
        SolverError::BudgetExhausted { nodes, lower, upper, ref best } => {
            let body =
                json!({ "status": "budget_exhausted", "nodes": nodes, "lower": lower, "upper": upper, "best": best });
            Rendered {
                table: fields(&[
                    ("status", "budget exhausted".into()),
                    ("nodes", nodes.to_string()),
                    ("bounds", format!("[{lower}, {upper}]")),
                    ("best", best.to_string()),
                ]),
                csv: csv(
                    &["status", "nodes", "lower", "upper", "best"],
                    &[vec![
                        "budget_exhausted".to_string(),
                        nodes.to_string(),
                        lower.to_string(),
                        upper.to_string(),
                        best.to_string(),
                    ]],
                ),
                json: envelope("solve", body),
            }
            .print(ctx.output);
            Exit { code: 4, message: e.to_string() }
        }
        SolverError::EmptyFamily(..) => Exit { code: 3, message: e.to_string() },
    }
}

fn target_name(target: Target) -> &'static str {
    match target {
        Target::Vertices => "vertices",
        Target::Edges => "edges",
    }
}

fn certificate_rows(cert: &DimensionCertificate) -> Vec<(&'static str, String)> {
    vec![
        ("value", cert.value.to_string()),
        ("basis", cert.basis.to_string()),
        ("nonempty_value", cert.nonempty_value.to_string()),
        ("lower_bound", cert.lower_bound.to_string()),
        ("greedy_upper", cert.greedy_upper.to_string()),
        ("search_nodes", cert.search_nodes.to_string()),
        ("optimality", "exhausted".to_string()),
    ]
}

pub fn dimension(ctx: &Context, format: &InputFormat, input: Option<&Path>, edges: bool) -> Result<Status, Exit> {
    let g = read_graph(*format, input)?;
    let target = if edges { Target::Edges } else { Target::Vertices };
    let cert = solve(&g, target, ctx.solver()).map_err(|e| solver_exit(ctx, e))?;
    let command = if edges { "edim" } else { "dim" };
    let mut rows = vec![("n", g.n().to_string()), ("edges", g.edge_count().to_string())];
    rows.extend(certificate_rows(&cert));
    let mut body = serde_json::to_value(&cert).expect("certificate serializes");
    body["n"] = g.n().into();
    body["edges"] = g.edge_count().into();
    body["graph6"] = graph6::encode(&g).into();
    body["target"] = target_name(target).into();
    let header: Vec<&str> = rows.iter().map(|(k, _)| *k).collect();
    Rendered {
        table: fields(&rows),
        csv: csv(&header, &[rows.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>()]),
        json: envelope(command, body),
    }
    .print(ctx.output);
    Ok(Status::Pass)
}

pub fn verify(
    ctx: &Context,
    format: &InputFormat,
    input: Option<&Path>,
    landmarks: &str,
    edges: bool,
) -> Result<Status, Exit> {
    let g = read_graph(*format, input)?;
    let ids = parse_landmarks(landmarks)?;
    let set = LandmarkSet::new(ids, g.n()).map_err(Exit::usage)?;
    let res = if edges { is_edge_resolving(&g, &set) } else { is_vertex_resolving(&g, &set) }?;
    let target = if edges { Target::Edges } else { Target::Vertices };
    let witness = res.witness().cloned();
    let (a, b, shared) = match &witness {
        Some(w) => (w.a.to_string(), w.b.to_string(), w.shared_vector.to_string()),
        None => Default::default(),
    };
    let mut rows = vec![
        ("target", target_name(target).to_string()),
        ("landmarks", set.to_string()),
        ("resolving", res.is_resolving().to_string()),
    ];
    if witness.is_some() {
        rows.push(("witness", format!("{a} and {b} share {shared}")));
    }
    Rendered {
        table: fields(&rows),
        csv: csv(&["target", "landmarks", "resolving", "a", "b", "shared_vector"], &[vec![
            target_name(target).to_string(),
            set.to_string(),
            res.is_resolving().to_string(),
            a,
            b,
            shared,
        ]]),
        json: envelope(
            "verify",
            json!({ "target": target_name(target), "landmarks": set, "resolving": res.is_resolving(), "witness": witness }),
        ),
    }
    .print(ctx.output);
    Ok(Status::from_pass(matches!(res, Resolution::Resolving)))
}

fn build(family: FamilyKind, k: Option<usize>, dims: &[usize]) -> Result<ConstructionOutput, ConstructionError> {
    if family == FamilyKind::Grid {
        return grid_construction(dims);
    }
    let k = k.expect("checked by caller");
    match family {
        FamilyKind::MdComplete => md_complete(k),
        FamilyKind::EdimStar => edim_star(k),
        FamilyKind::MdStar => md_star_unchecked(k),
        FamilyKind::MdBiclique => md_biclique(k),
        FamilyKind::EdimBiclique => edim_biclique(k),
        FamilyKind::Grid => unreachable!(),
    }
}

pub fn construct(
    ctx: &Context,
    family: FamilyKind,
    k: Option<usize>,
    dims: &[usize],
    check: bool,
) -> Result<Status, Exit> {
    match (family == FamilyKind::Grid, k.is_some(), dims.is_empty()) {
        (true, false, false) | (false, true, true) => {}
        (true, ..) => return Err(Exit::usage("grid takes --dims and no --k")),
        (false, ..) => return Err(Exit::usage(format!("{family} takes --k and no --dims"))),
    }
    let out = match build(family, k, dims) {
        Ok(out) => out,
        Err(
            e @ (ConstructionError::ParameterOutOfRange { .. }
            | ConstructionError::NoDimensions
            | ConstructionError::SideTooShort(_)
            | ConstructionError::GridTooLarge(_)),
        ) => return Err(Exit::usage(e)),
        Err(e) => {
            // A construction whose built-in verification failed.
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope("construct", json!({ "error": e.to_string() }))).unwrap()
            );
            return Ok(Status::PropertyFail);
        }
    };

    let mut body = serde_json::to_value(&out).expect("construction serializes");
    body["n"] = out.graph.n().into();
    body["edges"] = out.graph.edge_count().into();
    let mut summary = vec![
        ("family", family.to_string()),
        ("k", out.k.to_string()),
        ("n", out.graph.n().to_string()),
        ("edges", out.graph.edge_count().to_string()),
        ("graph6", graph6::encode(&out.graph)),
        ("target", target_name(out.target).to_string()),
        ("landmarks", out.landmarks.to_string()),
    ];
    if !out.deleted.is_empty() {
        let labels: Vec<&str> = out.deleted.iter().map(|d| d.label.as_str()).collect();
        summary.push(("deleted", labels.join(" ")));
    }

    let mut status = Status::Pass;
    if check {
        let verified = out.verify();
        let mut report =
            json!({ "verified": verified.is_ok(), "error": verified.as_ref().err().map(ToString::to_string) });
        summary.push(("verified", verified.is_ok().to_string()));
        if let Err(e) = &verified {
            summary.push(("error", e.to_string()));
            status = Status::PropertyFail;
        }
        if out.graph.n() <= CHECK_SOLVER_MAX_N && out.graph.is_connected() {
            let cert = solve(&out.graph, out.target, ctx.solver()).map_err(|e| solver_exit(ctx, e))?;
            summary.push(("solver_value", cert.value.to_string()));
            summary.push(("solver_basis", cert.basis.to_string()));
            report["solver"] = json!({ "value": cert.value, "basis": cert.basis });
        }
        body["check"] = report;
    }

    let vertex_rows: Vec<Vec<String>> = (0..out.graph.n())
        .map(|v| {
            let role = serde_json::to_value(&out.roles[v]).expect("role serializes");
            vec![
                v.to_string(),
                role["role"].as_str().unwrap_or_default().to_string(),
                match &role["index"] {
                    Value::Null => String::new(),
                    other => other.to_string(),
                },
                out.labels[v].clone().unwrap_or_default(),
                out.landmarks.contains(v).to_string(),
            ]
        })
        .collect();
    let header = ["vertex", "role", "index", "label", "landmark"];
    Rendered {
        table: fields(&summary) + "\n" + &table(&header, &vertex_rows),
        csv: csv(&header, &vertex_rows),
        json: envelope("construct", body),
    }
    .print(ctx.output);
    Ok(status)
}

fn render_sweep(report: &SweepReport, timing: bool) -> Rendered {
    let mut summary = vec![
        ("theorem", report.theorem_id.to_string()),
        ("n", format!("{}..={}", report.n_min, report.n_max)),
        ("graphs_checked", report.graphs_checked.to_string()),
        ("applicable", report.applicable.to_string()),
        ("failures", report.failures.len().to_string()),
        ("budget_exhaustions", report.solver_budget_exhaustions.to_string()),
    ];
    let counts: Vec<String> = report.counts.iter().map(|c| format!("{}:{}", c.n, c.graphs)).collect();
    summary.push(("counts", counts.join(" ")));
    let mut text = fields(&summary);
    for f in &report.failures {
        text += &format!("FAIL {} {}\n", f.graph6, f.details);
    }
    let (header, rows): (&[&str], Vec<Vec<String>>) = match &report.data {
        Some(data) => (
            &["edim", "graphs", "max_clique", "example"],
            data.iter()
                .map(|r| vec![r.edim.to_string(), r.graphs.to_string(), r.max_clique.to_string(), r.example.clone()])
                .collect(),
        ),
        None => (
            &["theorem", "n_min", "n_max", "graphs_checked", "applicable", "failures", "budget_exhaustions"],
            vec![vec![
                report.theorem_id.to_string(),
                report.n_min.to_string(),
                report.n_max.to_string(),
                report.graphs_checked.to_string(),
                report.applicable.to_string(),
                report.failures.len().to_string(),
                report.solver_budget_exhaustions.to_string(),
            ]],
        ),
    };
    if report.data.is_some() {
        text += &format!("\n{}", table(header, &rows));
    }
    Rendered {
        json: serde_json::from_str(&report.to_json(timing)).expect("report is valid JSON"),
        table: text,
        csv: csv(header, &rows),
    }
}

pub fn check(
    ctx: &Context,
    theorem: TheoremId,
    min_n: usize,
    max_n: usize,
    extended: bool,
    timing: bool,
) -> Result<Status, Exit> {
    let opts =
        SweepOptions { n_min: min_n, solver: ctx.solver(), enumerate: EnumerateOptions { allow_extended: extended } };
    let report = sweep(theorem, max_n, opts).map_err(Exit::usage)?;
    eprintln!("{theorem}: {} graphs in {} ms", report.graphs_checked, report.elapsed.as_millis());
    render_sweep(&report, timing).print(ctx.output);
    if !report.failures.is_empty() {
        Ok(Status::PropertyFail)
    } else if report.solver_budget_exhaustions > 0 {
        Err(Exit {
            code: 4,
            message: format!("{} graphs exhausted the solver budget", report.solver_budget_exhaustions),
        })
    } else {
        Ok(Status::Pass)
    }
}

fn exact(b: &ExactBound) -> String {
    let floor = b.floor().to_string();
    if b.is_integer() {
        floor
    } else {
        format!("{floor} (floor of {})", serde_json::to_value(b).unwrap()["expression"].as_str().unwrap_or_default())
    }
}

pub fn bounds(ctx: &Context, k: &str, d: &str, patterns: bool) -> Result<Status, Exit> {
    let ks = parse_range(k)?;
    if patterns {
        let all = ks.iter().map(|&k| pattern_bounds(k)).collect::<Result<Vec<_>, _>>().map_err(Exit::usage)?;
        let header = [
            "k",
            "clique_md",
            "star_edim",
            "star_md_lower",
            "star_md_upper",
            "biclique_md_lower",
            "biclique_md_upper",
            "biclique_edim_lower",
            "biclique_edim_upper",
        ];
        let rows: Vec<Vec<String>> = all
            .iter()
            .map(|p| {
                vec![
                    p.k.to_string(),
                    p.clique_md.to_string(),
                    p.star_edim.to_string(),
                    p.star_md.lower.to_string(),
                    exact(&p.star_md.upper),
                    p.biclique_md.lower.to_string(),
                    exact(&p.biclique_md.upper),
                    p.biclique_edim.lower.to_string(),
                    exact(&p.biclique_edim.upper),
                ]
            })
            .collect();
        Rendered {
            table: table(&header, &rows),
            csv: csv(&header, &rows),
            json: envelope("bounds", json!({ "patterns": all })),
        }
        .print(ctx.output);
        return Ok(Status::Pass);
    }
    let ds = parse_range(d)?;
    let rows: Vec<BoundRow> = bound_table(ks, ds).map_err(Exit::usage)?;
    let header =
        ["k", "D", "edge_bound_new", "edge_bound_zubrilina", "vertex_bound_hernando", "subgraph_bound", "sharpens"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.d.to_string(),
                r.edge_bound_new.to_string(),
                r.edge_bound_zubrilina.to_string(),
                r.vertex_bound_hernando.to_string(),
                r.subgraph_bound.to_string(),
                r.sharpens.to_string(),
            ]
        })
        .collect();
    Rendered {
        table: table(&header, &cells),
        csv: csv(&header, &cells),
        json: envelope("bounds", json!({ "rows": rows })),
    }
    .print(ctx.output);
    Ok(Status::Pass)
}

fn render_audit(g: &Graph, rec: &AuditRecord) -> Rendered {
    let summary = [
        ("n", rec.n.to_string()),
        ("edges", rec.edges.to_string()),
        ("diameter", rec.diameter.to_string()),
        ("dim", rec.dim.to_string()),
        ("edim", rec.edim.to_string()),
        ("max_degree", rec.max_degree.to_string()),
        ("degeneracy", rec.degeneracy.to_string()),
        ("clique", rec.clique.to_string()),
        ("biclique", rec.biclique.map_or("-".into(), |b| b.to_string())),
        ("chromatic", format!("{}{}", rec.chromatic, if rec.chromatic_exact { "" } else { " (greedy upper bound)" })),
    ];
    let header = ["inequality", "lhs", "rhs", "holds"];
    let rows: Vec<Vec<String>> = rec
        .inequalities
        .iter()
        .map(|i| vec![i.id.to_string(), i.lhs.to_string(), exact(&i.rhs), i.holds.to_string()])
        .collect();
    let mut body = serde_json::to_value(rec).expect("audit serializes");
    body["graph6"] = graph6::encode(g).into();
    Rendered {
        table: fields(&summary) + "\n" + &table(&header, &rows),
        csv: csv(&header, &rows),
        json: envelope("audit", body),
    }
}

pub fn audit(ctx: &Context, format: &InputFormat, input: Option<&Path>) -> Result<Status, Exit> {
    let g = read_graph(*format, input)?;
    let rec = audit_graph(&g, ctx.solver()).map_err(|e| solver_exit(ctx, e))?;
    render_audit(&g, &rec).print(ctx.output);
    let clean = rec.failures().next().is_none();
    Ok(Status::from_pass(clean))
}

pub fn characterize(ctx: &Context, format: &InputFormat, input: Option<&Path>) -> Result<Status, Exit> {
    let g = read_graph(*format, input)?;
    g.ensure_connected()?;
    let n = g.n();
    let dm = bfs_all_pairs(&g);
    let edim = solve(&g, Target::Edges, ctx.solver()).map_err(|e| solver_exit(ctx, e))?.value;
    let mut body = json!({ "n": n, "edim": edim, "graph6": graph6::encode(&g) });
    let mut summary = vec![("n", n.to_string()), ("edim", edim.to_string())];
    let mut consistent = true;
    if n >= 3 {
        let pair = char_edim_n1(&g).map_err(Exit::usage)?;
        let triple = char_edim_ge_n2(&g).map_err(Exit::usage)?;
        let diam = diameter_check_with(&g, &dm, edim);
        let eq_n2 = !pair.holds && triple.holds;
        consistent = pair.holds == (edim + 1 == n) && triple.holds == (edim + 2 >= n) && diam.passes();
        body["edim_n1"] = json!(pair);
        body["edim_ge_n2"] = json!({ "holds": triple.holds, "first_failure": triple.first_failure() });
        body["edim_eq_n2"] = eq_n2.into();
        body["diameter_check"] = json!(diam);
        body["consistent"] = consistent.into();
        summary.extend([
            ("edim_n1", pair.holds.to_string()),
            ("edim_ge_n2", triple.holds.to_string()),
            ("edim_eq_n2", eq_n2.to_string()),
            ("diameter", diam.diameter.to_string()),
            ("diameter_checks", diam.passes().to_string()),
            ("consistent", consistent.to_string()),
        ]);
        if let Some((a, b)) = pair.failing_pair {
            summary.push(("edim_n1_failing_pair", format!("{a} {b}")));
        }
        if let Some(t) = triple.first_failure() {
            summary.push(("edim_ge_n2_failing_triple", format!("{} {} {}", t[0], t[1], t[2])));
        }
    } else {
        body["note"] = "characterizations need n >= 3".into();
    }
    let header: Vec<&str> = summary.iter().map(|(k, _)| *k).collect();
    Rendered {
        table: fields(&summary),
        csv: csv(&header, &[summary.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>()]),
        json: envelope("characterize", body),
    }
    .print(ctx.output);
    Ok(Status::from_pass(consistent))
}
