//! `metricdim`: exact metric dimension, constructions and theorem sweeps
//! from the command line.
//!
//! Exit codes: 0 pass, 1 property failure, 2 usage or parse error,
//! 3 precondition (disconnected input), 4 solver budget exhausted.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use metricdim::constructions::FamilyKind;
use metricdim::TheoremId;

use crate::input::InputFormat;
use crate::render::OutputFormat;

#[derive(Parser, Debug)]
#[command(name = "metricdim", version, about = "Exact metric and edge metric dimension of small graphs")]
struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true, env = "METRICDIM_THREADS", value_name = "N")]
    threads: Option<usize>,

    /// Search-node budget for the exact solver.
    #[arg(long, global = true, value_name = "NODES")]
    budget: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// How to parse the input; there is no auto-detection.
    #[arg(long, value_enum)]
    format: InputFormat,

    /// Input file; stdin when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Metric dimension with a lexicographically smallest basis.
    Dim(GraphInput),
    /// Edge metric dimension with a lexicographically smallest basis.
    Edim(GraphInput),
    /// Check whether a landmark set resolves the vertices (or edges).
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// Comma-separated vertex ids, e.g. `0,3`; empty for the empty set.
        #[arg(long, allow_hyphen_values = false)]
        landmarks: String,
        /// Resolve edges instead of vertices.
        #[arg(long)]
        edges: bool,
    },
    /// Emit one of the extremal constructions with its landmark certificate.
    Construct {
        family: FamilyKind,
        #[arg(long)]
        k: Option<usize>,
        /// Grid side lengths, e.g. `2,3,4`.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// Recompute distances and verify the certificate.
        #[arg(long)]
        check: bool,
    },
    /// Sweep a registered statement over all connected graphs up to --max-n.
    Check {
        theorem: TheoremId,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = metricdim::enumerate::sweep::DEFAULT_MIN_N)]
        min_n: usize,
        /// Allow n = 9.
        #[arg(long)]
        extended: bool,
        /// Include elapsed_ms in the JSON report.
        #[arg(long)]
        timing: bool,
    },
    /// Tabulate the closed-form bounds over ranges of k and D.
    Bounds {
        /// `a`, `a..b` (inclusive) or a comma list.
        #[arg(long, default_value = "1..4")]
        k: String,
        #[arg(long, default_value = "1..6")]
        d: String,
        /// Tabulate subgraph-size bounds per k instead.
        #[arg(long)]
        patterns: bool,
    },
    /// Evaluate every applicable bound and corollary on one graph.
    Audit(GraphInput),
    /// Evaluate the characterization predicates and diameter theorems.
    Characterize(GraphInput),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = commands::Context { output: cli.output, budget: cli.budget };
    let result = match cli.command {
        Command::Dim(g) => commands::dimension(&ctx, &g.format, g.input.as_deref(), false),
        Command::Edim(g) => commands::dimension(&ctx, &g.format, g.input.as_deref(), true),
        Command::Verify { graph, landmarks, edges } => {
            commands::verify(&ctx, &graph.format, graph.input.as_deref(), &landmarks, edges)
        }
        Command::Construct { family, k, dims, check } => commands::construct(&ctx, family, k, &dims, check),
        Command::Check { theorem, max_n, min_n, extended, timing } => {
            commands::check(&ctx, theorem, min_n, max_n, extended, timing)
        }
        Command::Bounds { k, d, patterns } => commands::bounds(&ctx, &k, &d, patterns),
        Command::Audit(g) => commands::audit(&ctx, &g.format, g.input.as_deref()),
        Command::Characterize(g) => commands::characterize(&ctx, &g.format, g.input.as_deref()),
    };
    match result {
        Ok(commands::Status::Pass) => ExitCode::SUCCESS,
        Ok(commands::Status::PropertyFail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
