use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stvis::visibility::Variant;
use stvis_cli::{
    cmd_certify, cmd_construct, cmd_encode, cmd_generate, cmd_solve, cmd_verify,
    node_budget_from_env, resolve_graph, Family, GraphFormat, Method, ModelFormat, SolveOptions,
};

/// Exact solvers, certified constructions and SAT/ILP encodings for
/// mutual-visibility and general position problems on Sierpinski triangle
/// graphs.
#[derive(Parser)]
#[command(name = "stvis", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphSource {
    /// Graph file (edge list or DIMACS; format is sniffed)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Graph family: sierpinski (s) or sierpinski-triangle (st)
    #[arg(long)]
    family: Option<String>,
    /// Recursion depth of the generated family member
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a Sierpinski graph or Sierpinski triangle graph
    Generate {
        /// Graph family: sierpinski (s) or sierpinski-triangle (st)
        #[arg(long)]
        family: String,
        /// Recursion depth
        #[arg(long)]
        n: usize,
        /// Output format: edge-list or dimacs
        #[arg(long, default_value = "edge-list")]
        format: String,
        /// Graph file to write
        #[arg(long)]
        out: PathBuf,
        /// Label map file to write (vertex index to merged words)
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Compute an exact optimum with a chosen engine
    Solve {
        #[command(flatten)]
        source: GraphSource,
        /// Set variant: mutual, total, outer, dual or gp
        #[arg(long)]
        variant: String,
        /// Engine: exhaustive, bnb or sat
        #[arg(long, default_value = "bnb")]
        method: String,
        /// Node budget for bnb (also via STVIS_NODE_BUDGET)
        #[arg(long)]
        node_budget: Option<u64>,
        /// Also enumerate all optimum-size sets
        #[arg(long)]
        enumerate_optima: bool,
        /// Cap on enumerated optima
        #[arg(long, default_value_t = 1000)]
        optima_cap: usize,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Write the closed-form optimal set for a variant on ST_3^n
    Construct {
        /// Recursion depth (n >= 1)
        #[arg(long)]
        n: usize,
        /// Set variant: mutual, total, outer, dual or gp
        #[arg(long)]
        variant: String,
        /// Vertex-set file to write (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Deliberately corrupt the set (negative-control test hook)
        #[arg(long, hide = true)]
        corrupt_construction: bool,
    },
    /// Check a vertex-set file against a graph file
    Verify {
        /// Graph file
        #[arg(long)]
        graph: PathBuf,
        /// Vertex-set file (one index per line, # comments ignored)
        #[arg(long)]
        set: PathBuf,
        /// Set variant: mutual, total, outer, dual or gp
        #[arg(long)]
        variant: String,
    },
    /// Emit a SAT (DIMACS) or ILP (LP) model
    Encode {
        #[command(flatten)]
        source: GraphSource,
        /// Set variant: mutual, total, outer, dual or gp
        #[arg(long)]
        variant: String,
        /// Model format: dimacs or lp
        #[arg(long)]
        format: String,
        /// Target set size (required for dimacs)
        #[arg(long)]
        ell: Option<usize>,
        /// Model file to write
        #[arg(long)]
        out: PathBuf,
        /// Sidecar variable-map file to write
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Certify closed forms against constructions and exact solves
    Certify {
        /// Largest depth to certify (1..=6 by default)
        #[arg(long)]
        n_max: usize,
        /// Extend exact solves to n=4 and lift the depth guard
        #[arg(long)]
        allow_long: bool,
        /// Deliberately corrupt constructions (negative-control test hook)
        #[arg(long, hide = true)]
        corrupt_construction: bool,
    },
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Generate { family, n, format, out, labels } => {
            cmd_generate(
                Family::parse(&family)?,
                n,
                GraphFormat::parse(&format)?,
                &out,
                labels.as_deref(),
                &mut stdout,
            )?;
            Ok(0)
        }
        Command::Solve {
            source,
            variant,
            method,
            node_budget,
            enumerate_optima,
            optima_cap,
            json,
        } => {
            let family = source.family.as_deref().map(Family::parse).transpose()?;
            let loaded = resolve_graph(source.graph.as_deref(), family, source.n)?;
            let labels = loaded.graph.labels().map(|l| l.to_vec());
            let opts = SolveOptions {
                method: Method::parse(&method)?,
                node_budget: node_budget_from_env(node_budget)?,
                enumerate: enumerate_optima,
                optima_cap,
                json,
            };
            cmd_solve(&loaded, Variant::parse(&variant)?, &opts, labels.as_deref(), &mut stdout)
        }
        Command::Construct { n, variant, out, corrupt_construction } => {
            cmd_construct(n, Variant::parse(&variant)?, out.as_deref(), corrupt_construction)?;
            Ok(0)
        }
        Command::Verify { graph, set, variant } => {
            cmd_verify(&graph, &set, Variant::parse(&variant)?, &mut stdout)
        }
        Command::Encode { source, variant, format, ell, out, map } => {
            let family = source.family.as_deref().map(Family::parse).transpose()?;
            let loaded = resolve_graph(source.graph.as_deref(), family, source.n)?;
            cmd_encode(
                &loaded,
                Variant::parse(&variant)?,
                ModelFormat::parse(&format)?,
                ell,
                &out,
                map.as_deref(),
                &mut stdout,
            )?;
            Ok(0)
        }
        Command::Certify { n_max, allow_long, corrupt_construction } => {
            cmd_certify(n_max, allow_long, corrupt_construction, &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
