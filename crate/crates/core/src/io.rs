//! Text formats for graphs, label maps and vertex sets.
//!
//! Two graph formats are supported:
//!
//! * plain edge list: a `"n m"` header line followed by one `"u v"` pair per
//!   line, 0-based;
//! * DIMACS graph: `"p edge n m"` followed by `"e u v"` lines, 1-based.
//!
//! Writers are deterministic (edges sorted ascending), so writing a parsed
//! file reproduces it byte for byte.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::visibility::VertexSet;

/// Writes the plain edge-list format.
pub fn write_edge_list<W: Write>(g: &Graph, mut sink: W) -> Result<()> {
    writeln!(sink, "{} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(sink, "{u} {v}")?;
    }
    Ok(())
}

/// Parses the plain edge-list format.
pub fn read_edge_list<R: BufRead>(source: R) -> Result<Graph> {
    let mut lines = source.lines().enumerate();
    let (n, m) = loop {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 0, message: "empty input".into() })?;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        break parse_two(line, lineno + 1)?;
    };
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        edges.push(parse_two(line, lineno + 1)?);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header announced {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges)
}

/// Writes the DIMACS graph format (1-based).
pub fn write_dimacs_graph<W: Write>(g: &Graph, mut sink: W) -> Result<()> {
    writeln!(sink, "p edge {} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(sink, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

/// Parses the DIMACS graph format; `c` comment lines are ignored.
pub fn read_dimacs_graph<R: BufRead>(source: R) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p edge") {
            let (nv, _ne) = parse_two(rest.trim(), lineno + 1)?;
            n = Some(nv);
        } else if let Some(rest) = line.strip_prefix('e') {
            let (u, v) = parse_two(rest.trim(), lineno + 1)?;
            if u == 0 || v == 0 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: "DIMACS vertices are 1-based".into(),
                });
            }
            edges.push((u - 1, v - 1));
        } else {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("unrecognized line '{line}'"),
            });
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, message: "missing 'p edge' header".into() })?;
    Graph::from_edges(n, &edges)
}

/// Writes the label map: one `"index word[,word]"` line per vertex.
pub fn write_label_map<W: Write>(g: &Graph, mut sink: W) -> Result<()> {
    let labels = g
        .labels()
        .ok_or_else(|| Error::InvalidArgument("graph carries no labels".into()))?;
    for (v, label) in labels.iter().enumerate() {
        writeln!(sink, "{v} {label}")?;
    }
    Ok(())
}

/// Writes a vertex set: comment header, then one index per line, ascending.
pub fn write_vertex_set<W: Write>(
    set: &VertexSet,
    header: &[(String, String)],
    labels: Option<&[String]>,
    mut sink: W,
) -> Result<()> {
    for (key, value) in header {
        writeln!(sink, "# {key}: {value}")?;
    }
    if let Some(labels) = labels {
        for v in set.iter() {
            writeln!(sink, "# {v} = {}", labels[v])?;
        }
    }
    for v in set.iter() {
        writeln!(sink, "{v}")?;
    }
    Ok(())
}

/// Reads a vertex set file (one index per line, `#` comments ignored) for a
/// host graph of the given size.
pub fn read_vertex_set<R: BufRead>(source: R, host_size: usize) -> Result<VertexSet> {
    let mut verts = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = line.parse::<usize>().map_err(|e| Error::Parse {
            line: lineno + 1,
            message: format!("invalid vertex index '{line}': {e}"),
        })?;
        verts.push(v);
    }
    VertexSet::new(host_size, verts)
}

fn parse_two(s: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = s.split_whitespace();
    let parse = |tok: Option<&str>| -> Result<usize> {
        tok.ok_or_else(|| Error::Parse { line, message: format!("expected two numbers in '{s}'") })?
            .parse::<usize>()
            .map_err(|e| Error::Parse { line, message: format!("invalid number in '{s}': {e}") })
    };
    let a = parse(it.next())?;
    let b = parse(it.next())?;
    if it.next().is_some() {
        return Err(Error::Parse { line, message: format!("trailing tokens in '{s}'") });
    }
    Ok((a, b))
}
