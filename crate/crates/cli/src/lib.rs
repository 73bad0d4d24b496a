//! Command implementations behind the `stvis` binary.
//!
//! Every solve re-validates its witness before the report is written, and
//! the exactness flag is true only when the engine proved optimality.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use serde::Serialize;

use stvis::constructions::{closed_form, construct_for, ConstructedSet};
use stvis::encodings::{
    encode_gp_sat, encode_visibility_ilp, encode_visibility_sat, max_via_sat, write_dimacs,
    write_lp, write_var_map, DEFAULT_ENCODING_PATH_CAP,
};
use stvis::error::Error as CoreError;
use stvis::graph::{all_pairs_distances, Graph};
use stvis::io::{
    read_dimacs_graph, read_edge_list, read_vertex_set, write_dimacs_graph, write_edge_list,
    write_label_map, write_vertex_set,
};
use stvis::search::{
    branch_and_bound_max, enumerate_optima, exhaustive_max, SearchResult,
    DEFAULT_EXHAUSTIVE_VERTEX_LIMIT,
};
use stvis::sierpinski::{build_sierpinski, build_sierpinski_triangle};
use stvis::visibility::{validate_set, Variant, VertexSet};

/// Environment variable consulted for the node budget when no flag is given.
pub const NODE_BUDGET_ENV: &str = "STVIS_NODE_BUDGET";

/// Graph families the generator knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Sierpinski,
    SierpinskiTriangle,
}

impl Family {
    pub fn parse(s: &str) -> anyhow::Result<Self> {
        match s {
            "sierpinski" | "s" => Ok(Family::Sierpinski),
            "sierpinski-triangle" | "st" => Ok(Family::SierpinskiTriangle),
            other => bail!("unknown family '{other}' (expected sierpinski or sierpinski-triangle)"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Sierpinski => "sierpinski",
            Family::SierpinskiTriangle => "sierpinski-triangle",
        }
    }
}

/// Graph output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    pub fn parse(s: &str) -> anyhow::Result<Self> {
        match s {
            "edge-list" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            other => bail!("unknown graph format '{other}' (expected edge-list or dimacs)"),
        }
    }
}

/// Structured solve report; printed as stable-order plain text or JSON.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub variant: String,
    pub method: String,
    pub optimum: usize,
    pub exact: bool,
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_words: Option<Vec<String>>,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optima_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optima: Option<Vec<Vec<usize>>>,
    pub time_ms: u128,
}

impl RunReport {
    /// Plain text rendering with a stable field order (diff-friendly).
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        push("command", self.command.clone());
        push("family", self.family.clone());
        if let Some(n) = self.n {
            push("n", n.to_string());
        }
        push("vertices", self.vertices.to_string());
        push("edges", self.edges.to_string());
        push("variant", self.variant.clone());
        push("method", self.method.clone());
        push("optimum", self.optimum.to_string());
        push("exact", self.exact.to_string());
        push(
            "witness",
            self.witness.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
        );
        if let Some(words) = &self.witness_words {
            push("witness-words", words.join(" "));
        }
        push("nodes", self.nodes.to_string());
        if let Some(count) = self.optima_count {
            push("optima-count", count.to_string());
        }
        if let Some(optima) = &self.optima {
            for set in optima {
                push(
                    "optimum-set",
                    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
                );
            }
        }
        push("time-ms", self.time_ms.to_string());
        out
    }
}

/// A graph plus provenance for reports.
pub struct LoadedGraph {
    pub graph: Graph,
    pub family: String,
    pub n: Option<usize>,
}

/// Reads a graph file, sniffing DIMACS by its `p edge` header.
pub fn load_graph_file(path: &Path) -> anyhow::Result<Graph> {
    let mut text = String::new();
    File::open(path)
        .with_context(|| format!("opening {}", path.display()))?
        .read_to_string(&mut text)?;
    let graph = if text.lines().any(|l| l.trim_start().starts_with("p edge")) {
        read_dimacs_graph(BufReader::new(text.as_bytes()))?
    } else {
        read_edge_list(BufReader::new(text.as_bytes()))?
    };
    Ok(graph)
}

/// Resolves the `--graph` / `--family --n` alternatives of solve and encode.
pub fn resolve_graph(
    graph_path: Option<&Path>,
    family: Option<Family>,
    n: Option<usize>,
) -> anyhow::Result<LoadedGraph> {
    match (graph_path, family, n) {
        (Some(path), None, _) => Ok(LoadedGraph {
            graph: load_graph_file(path)?,
            family: "file".into(),
            n: None,
        }),
        (None, Some(family), Some(n)) => {
            let graph = match family {
                Family::Sierpinski => build_sierpinski(n)?,
                Family::SierpinskiTriangle => build_sierpinski_triangle(n)?.graph().clone(),
            };
            Ok(LoadedGraph { graph, family: family.name().into(), n: Some(n) })
        }
        (None, Some(_), None) => bail!("--family requires --n"),
        (Some(_), Some(_), _) => bail!("--graph and --family are mutually exclusive"),
        (None, None, _) => bail!("either --graph or --family with --n is required"),
    }
}

fn open_sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

/// `generate`: writes the graph file (and label map) and prints the counts.
pub fn cmd_generate(
    family: Family,
    n: usize,
    format: GraphFormat,
    out: &Path,
    labels_out: Option<&Path>,
    stdout: &mut impl Write,
) -> anyhow::Result<()> {
    let graph = match family {
        Family::Sierpinski => build_sierpinski(n)?,
        Family::SierpinskiTriangle => build_sierpinski_triangle(n)?.graph().clone(),
    };
    {
        let mut sink = open_sink(Some(out))?;
        match format {
            GraphFormat::EdgeList => write_edge_list(&graph, &mut sink)?,
            GraphFormat::Dimacs => write_dimacs_graph(&graph, &mut sink)?,
        }
    }
    if let Some(labels_path) = labels_out {
        let mut sink = open_sink(Some(labels_path))?;
        write_label_map(&graph, &mut sink)?;
    }
    writeln!(stdout, "{} vertices, {} edges", graph.vertex_count(), graph.edge_count())?;
    Ok(())
}

/// Solve engines exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    BranchAndBound,
    Sat,
}

impl Method {
    pub fn parse(s: &str) -> anyhow::Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "bnb" => Ok(Method::BranchAndBound),
            "sat" => Ok(Method::Sat),
            other => bail!("unknown method '{other}' (expected exhaustive, bnb or sat)"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::BranchAndBound => "bnb",
            Method::Sat => "sat",
        }
    }
}

pub struct SolveOptions {
    pub method: Method,
    pub node_budget: Option<u64>,
    pub enumerate: bool,
    pub optima_cap: usize,
    pub json: bool,
}

/// Runs a solve and writes the report. Returns the process exit code:
/// 0 on success, 2 when the node budget was exhausted (the report then
/// carries the best known lower bound and `exact: false`).
pub fn cmd_solve(
    loaded: &LoadedGraph,
    variant: Variant,
    opts: &SolveOptions,
    labels: Option<&[String]>,
    stdout: &mut impl Write,
) -> anyhow::Result<i32> {
    let g = &loaded.graph;
    let started = Instant::now();
    let (result, exit_code) = match opts.method {
        Method::Exhaustive => {
            (exhaustive_max(g, variant, DEFAULT_EXHAUSTIVE_VERTEX_LIMIT)?, 0)
        }
        Method::BranchAndBound => match branch_and_bound_max(g, variant, opts.node_budget) {
            Ok(r) => (r, 0),
            Err(CoreError::NodeBudgetExhausted { best, .. }) => (*best, 2),
            Err(e) => return Err(e.into()),
        },
        Method::Sat => (max_via_sat(g, variant, DEFAULT_ENCODING_PATH_CAP)?, 0),
    };
    let time_ms = started.elapsed().as_millis();

    // a witness is a certificate: re-check it before reporting
    let dist = all_pairs_distances(g)?;
    if let Some(violation) = validate_set(g, &dist, &result.witness, variant) {
        bail!("internal error: witness failed re-validation: {violation}");
    }

    let optima = if opts.enumerate && exit_code == 0 {
        Some(enumerate_optima(g, variant, result.optimum, opts.optima_cap)?)
    } else {
        None
    };

    let report = build_report(
        "solve",
        loaded,
        variant,
        opts.method.name(),
        &result,
        labels,
        optima.as_deref(),
        time_ms,
    );
    if opts.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        write!(stdout, "{}", report.render_text())?;
    }
    Ok(exit_code)
}

#[allow(clippy::too_many_arguments)]
fn build_report(
    command: &str,
    loaded: &LoadedGraph,
    variant: Variant,
    method: &str,
    result: &SearchResult,
    labels: Option<&[String]>,
    optima: Option<&[VertexSet]>,
    time_ms: u128,
) -> RunReport {
    RunReport {
        command: command.into(),
        family: loaded.family.clone(),
        n: loaded.n,
        vertices: loaded.graph.vertex_count(),
        edges: loaded.graph.edge_count(),
        variant: variant.name().into(),
        method: method.into(),
        optimum: result.optimum,
        exact: result.exact,
        witness: result.witness.as_slice().to_vec(),
        witness_words: labels.map(|ls| {
            result.witness.iter().map(|v| ls[v].clone()).collect()
        }),
        nodes: result.nodes_explored,
        optima_count: optima.map(|o| o.len()),
        optima: optima.map(|o| o.iter().map(|s| s.as_slice().to_vec()).collect()),
        time_ms,
    }
}

/// `construct`: writes the closed-form optimal set as a vertex-set file.
pub fn cmd_construct(
    n: usize,
    variant: Variant,
    out: Option<&Path>,
    corrupt: bool,
) -> anyhow::Result<()> {
    let constructed = build_construction(n, variant, corrupt)?;
    let st = build_sierpinski_triangle(n)?;
    let labels: Vec<String> =
        st.graph().labels().map(|ls| ls.to_vec()).unwrap_or_default();
    let mut sink = open_sink(out)?;
    let header = vec![
        ("variant".to_string(), variant.name().to_string()),
        ("family".to_string(), "sierpinski-triangle".to_string()),
        ("n".to_string(), n.to_string()),
        ("expected-size".to_string(), constructed.expected_size.to_string()),
    ];
    write_vertex_set(&constructed.vertices, &header, Some(&labels), &mut sink)?;
    Ok(())
}

/// Builds a construction, optionally corrupting it (a test hook for the
/// certify negative control: swaps one chosen vertex for an unchosen one).
fn build_construction(
    n: usize,
    variant: Variant,
    corrupt: bool,
) -> anyhow::Result<ConstructedSet> {
    let st = build_sierpinski_triangle(n)?;
    let dist = all_pairs_distances(st.graph())?;
    let mut constructed = construct_for(&st, &dist, variant)?;
    if corrupt {
        let chosen = constructed.vertices.as_slice().to_vec();
        let substitute = (0..st.vertex_count())
            .find(|v| !chosen.contains(v))
            .ok_or_else(|| anyhow!("no vertex available to corrupt with"))?;
        let mut verts = chosen;
        verts.pop();
        verts.push(substitute);
        constructed.vertices = VertexSet::new(st.vertex_count(), verts)?;
    }
    Ok(constructed)
}

/// `verify`: checks a vertex-set file against a graph file. Exit 0 and
/// "OK" when valid, exit 1 and "VIOLATION <kind> <vertices>" otherwise.
pub fn cmd_verify(
    graph_path: &Path,
    set_path: &Path,
    variant: Variant,
    stdout: &mut impl Write,
) -> anyhow::Result<i32> {
    let graph = load_graph_file(graph_path)?;
    let set_file = File::open(set_path)
        .with_context(|| format!("opening {}", set_path.display()))?;
    let set = read_vertex_set(BufReader::new(set_file), graph.vertex_count())?;
    let dist = all_pairs_distances(&graph)?;
    match validate_set(&graph, &dist, &set, variant) {
        None => {
            writeln!(stdout, "OK")?;
            Ok(0)
        }
        Some(violation) => {
            writeln!(stdout, "VIOLATION {violation}")?;
            Ok(1)
        }
    }
}

/// Model output format for `encode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFormat {
    Dimacs,
    Lp,
}

impl ModelFormat {
    pub fn parse(s: &str) -> anyhow::Result<Self> {
        match s {
            "dimacs" => Ok(ModelFormat::Dimacs),
            "lp" => Ok(ModelFormat::Lp),
            other => bail!("unknown model format '{other}' (expected dimacs or lp)"),
        }
    }
}

/// `encode`: emits the SAT or ILP model for a graph and variant.
pub fn cmd_encode(
    loaded: &LoadedGraph,
    variant: Variant,
    format: ModelFormat,
    ell: Option<usize>,
    out: &Path,
    map_out: Option<&Path>,
    stdout: &mut impl Write,
) -> anyhow::Result<()> {
    let g = &loaded.graph;
    let dist = all_pairs_distances(g)?;
    match format {
        ModelFormat::Dimacs => {
            let ell = ell.ok_or_else(|| {
                anyhow!("--ell is required for DIMACS output (the SAT encoding tests one size)")
            })?;
            let cnf = match variant {
                Variant::GeneralPosition => encode_gp_sat(g, &dist, ell)?,
                _ => encode_visibility_sat(g, &dist, variant, ell, DEFAULT_ENCODING_PATH_CAP)?,
            };
            let mut sink = open_sink(Some(out))?;
            write_dimacs(&cnf, &mut sink)?;
            if let Some(map_path) = map_out {
                let mut map_sink = open_sink(Some(map_path))?;
                write_var_map(&cnf, &mut map_sink)?;
            }
            writeln!(stdout, "{} variables, {} clauses", cnf.var_count(), cnf.clause_count())?;
        }
        ModelFormat::Lp => {
            let model = encode_visibility_ilp(g, &dist, variant, DEFAULT_ENCODING_PATH_CAP)?;
            let mut sink = open_sink(Some(out))?;
            write_lp(&model, &mut sink)?;
            writeln!(
                stdout,
                "{} variables, {} constraints",
                model.var_count(),
                model.constraints().len()
            )?;
        }
    }
    Ok(())
}

/// Per-variant ceiling up to which `certify` computes exact optima.
///
/// The defaults stop at n=3 (42 vertices), which every engine finishes in
/// seconds. `--allow-long` additionally attempts the large machine checks:
/// n=4 for every variant and n=5 for total and outer visibility. Those runs
/// can take from minutes (total, outer) to many hours (mutual, dual).
fn exact_ceiling(variant: Variant, allow_long: bool) -> usize {
    if !allow_long {
        return 3;
    }
    match variant {
        Variant::Total | Variant::Outer => 5,
        _ => 4,
    }
}

/// `certify`: checks closed form against construction size, construction
/// validity and (where feasible) the exact optimum, one row per (n,
/// variant). Returns 0 when every row matches.
pub fn cmd_certify(
    n_max: usize,
    allow_long: bool,
    corrupt: bool,
    stdout: &mut impl Write,
) -> anyhow::Result<i32> {
    if n_max < 1 {
        bail!("--n-max must be at least 1");
    }
    if n_max > 6 && !allow_long {
        bail!("--n-max beyond 6 needs --allow-long (construction validation gets slow)");
    }
    writeln!(stdout, "{:<3} {:<7} {:>6} {:>11} {:>5} {:>6}  status", "n", "variant", "closed", "constructed", "valid", "exact")?;
    let mut mismatches = 0usize;
    for n in 1..=n_max {
        let st = build_sierpinski_triangle(n)?;
        let dist = all_pairs_distances(st.graph())?;
        for variant in Variant::ALL {
            let closed = closed_form(variant, n)?;
            // construction row (the corrupt hook perturbs it deliberately)
            let (size, valid) = match build_construction(n, variant, corrupt) {
                Ok(c) => {
                    let valid =
                        validate_set(st.graph(), &dist, &c.vertices, variant).is_none();
                    (Some(c.vertices.len()), valid)
                }
                Err(_) => (None, false),
            };
            let exact = if n <= 2 {
                Some(exhaustive_max(st.graph(), variant, 20)?.optimum)
            } else if n <= exact_ceiling(variant, allow_long) {
                Some(branch_and_bound_max(st.graph(), variant, None)?.optimum)
            } else {
                None
            };
            let ok = size == Some(closed) && valid && exact.map_or(true, |e| e == closed);
            if !ok {
                mismatches += 1;
            }
            writeln!(
                stdout,
                "{:<3} {:<7} {:>6} {:>11} {:>5} {:>6}  {}",
                n,
                variant.name(),
                closed,
                size.map_or("-".to_string(), |s| s.to_string()),
                if valid { "yes" } else { "no" },
                exact.map_or("-".to_string(), |e| e.to_string()),
                if ok { "MATCH" } else { "MISMATCH" },
            )?;
        }
    }
    if mismatches == 0 {
        writeln!(stdout, "certify: all rows match")?;
        Ok(0)
    } else {
        writeln!(stdout, "certify: {mismatches} mismatches")?;
        Ok(1)
    }
}

/// Reads the node budget from the environment when no flag was given.
pub fn node_budget_from_env(flag: Option<u64>) -> anyhow::Result<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(NODE_BUDGET_ENV) {
        Ok(text) => {
            let value = text
                .parse::<u64>()
                .with_context(|| format!("parsing {NODE_BUDGET_ENV}={text}"))?;
            Ok(Some(value))
        }
        Err(_) => Ok(None),
    }
}

/// Convenience used by tests: path helper.
pub fn path_buf(s: &str) -> PathBuf {
    PathBuf::from(s)
}
