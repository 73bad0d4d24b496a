//! CNF formulas with annotated variables and DIMACS serialization.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// What a CNF variable stands for, recorded for model decoding and the
/// sidecar map file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarMeaning {
    /// Membership atom of a vertex (false = in the set).
    Vertex(usize),
    /// Conjunction of the internal-vertex atoms of one shortest path.
    PathAux { u: usize, v: usize, index: usize },
    /// Sequential-counter register: at least `j` true among the first `i`.
    Counter { i: usize, j: usize },
}

/// A CNF formula over variables `1..=var_count`, clauses as nonzero signed
/// literals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: usize,
    clauses: Vec<Vec<i32>>,
    annotations: BTreeMap<usize, VarMeaning>,
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    /// Allocates the next variable and records its meaning.
    pub fn fresh_var(&mut self, meaning: VarMeaning) -> i32 {
        self.var_count += 1;
        self.annotations.insert(self.var_count, meaning);
        self.var_count as i32
    }

    /// Allocates an unannotated variable (used when parsing DIMACS input).
    pub fn fresh_unnamed_var(&mut self) -> i32 {
        self.var_count += 1;
        self.var_count as i32
    }

    /// Adds a clause. Rejects empty clauses, out-of-range literals and
    /// duplicate literals within the clause.
    pub fn add_clause(&mut self, lits: Vec<i32>) -> Result<()> {
        if lits.is_empty() {
            return Err(Error::InvalidArgument("empty clause".into()));
        }
        let mut seen = lits.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("duplicate literal in clause {lits:?}")));
        }
        for &l in &lits {
            if l == 0 || l.unsigned_abs() as usize > self.var_count {
                return Err(Error::InvalidArgument(format!(
                    "literal {l} outside 1..={}",
                    self.var_count
                )));
            }
        }
        self.clauses.push(lits);
        Ok(())
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn meaning(&self, var: usize) -> Option<VarMeaning> {
        self.annotations.get(&var).copied()
    }

    pub fn annotations(&self) -> impl Iterator<Item = (usize, VarMeaning)> + '_ {
        self.annotations.iter().map(|(&v, &m)| (v, m))
    }

    /// True when the assignment (indexed by variable, entry 0 unused)
    /// satisfies every clause.
    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&l| {
                let v = l.unsigned_abs() as usize;
                values[v] == (l > 0)
            })
        })
    }
}

/// Writes the DIMACS CNF format: `p cnf <vars> <clauses>` then
/// zero-terminated clause lines. Deterministic, byte-stable.
pub fn write_dimacs<W: Write>(cnf: &CnfFormula, mut sink: W) -> Result<()> {
    writeln!(sink, "p cnf {} {}", cnf.var_count(), cnf.clause_count())?;
    for clause in cnf.clauses() {
        for l in clause {
            write!(sink, "{l} ")?;
        }
        writeln!(sink, "0")?;
    }
    Ok(())
}

/// Parses DIMACS CNF; comments (`c` lines) are ignored, annotations are not
/// recovered.
pub fn read_dimacs<R: BufRead>(source: R) -> Result<CnfFormula> {
    let mut cnf = CnfFormula::new();
    let mut announced: Option<(usize, usize)> = None;
    let mut pending: Vec<i32> = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let mut it = rest.split_whitespace();
            let vars = it
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse { line: lineno + 1, message: "bad header".into() })?;
            let clauses = it
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse { line: lineno + 1, message: "bad header".into() })?;
            announced = Some((vars, clauses));
            while cnf.var_count() < vars {
                cnf.fresh_unnamed_var();
            }
            continue;
        }
        for tok in line.split_whitespace() {
            let l = tok.parse::<i32>().map_err(|e| Error::Parse {
                line: lineno + 1,
                message: format!("invalid literal '{tok}': {e}"),
            })?;
            if l == 0 {
                cnf.add_clause(std::mem::take(&mut pending))?;
            } else {
                pending.push(l);
            }
        }
    }
    if !pending.is_empty() {
        return Err(Error::Parse { line: 0, message: "unterminated clause".into() });
    }
    let (vars, clauses) =
        announced.ok_or(Error::Parse { line: 0, message: "missing 'p cnf' header".into() })?;
    if cnf.var_count() != vars || cnf.clause_count() != clauses {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "header announced {vars} vars / {clauses} clauses, found {} / {}",
                cnf.var_count(),
                cnf.clause_count()
            ),
        });
    }
    Ok(cnf)
}

/// Writes the sidecar mapping file: one `var <id> = ...` line per annotated
/// variable, in variable order.
pub fn write_var_map<W: Write>(cnf: &CnfFormula, mut sink: W) -> Result<()> {
    for (var, meaning) in cnf.annotations() {
        match meaning {
            VarMeaning::Vertex(v) => writeln!(sink, "var {var} = x {v}")?,
            VarMeaning::PathAux { u, v, index } => {
                writeln!(sink, "var {var} = path {u} {v} {index}")?
            }
            VarMeaning::Counter { i, j } => writeln!(sink, "var {var} = counter {i} {j}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_formula_serializes_to_bare_header() {
        let cnf = CnfFormula::new();
        let mut buf = Vec::new();
        write_dimacs(&cnf, &mut buf).unwrap();
        assert_eq!(buf, b"p cnf 0 0\n");
    }

    #[test]
    fn clause_validation() {
        let mut cnf = CnfFormula::new();
        let x = cnf.fresh_var(VarMeaning::Vertex(0));
        assert!(cnf.add_clause(vec![]).is_err());
        assert!(cnf.add_clause(vec![x, x]).is_err());
        assert!(cnf.add_clause(vec![x + 1]).is_err());
        assert!(cnf.add_clause(vec![x, -x]).is_ok());
    }

    #[test]
    fn dimacs_round_trip_preserves_structure() {
        let mut cnf = CnfFormula::new();
        let a = cnf.fresh_var(VarMeaning::Vertex(0));
        let b = cnf.fresh_var(VarMeaning::Vertex(1));
        cnf.add_clause(vec![a, -b]).unwrap();
        cnf.add_clause(vec![-a]).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&cnf, &mut buf).unwrap();
        let parsed = read_dimacs(&buf[..]).unwrap();
        assert_eq!(parsed.var_count(), cnf.var_count());
        assert_eq!(parsed.clauses(), cnf.clauses());
        let mut again = Vec::new();
        write_dimacs(&parsed, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn var_map_lines() {
        let mut cnf = CnfFormula::new();
        cnf.fresh_var(VarMeaning::Vertex(4));
        cnf.fresh_var(VarMeaning::PathAux { u: 0, v: 3, index: 1 });
        cnf.fresh_var(VarMeaning::Counter { i: 2, j: 1 });
        let mut buf = Vec::new();
        write_var_map(&cnf, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "var 1 = x 4\nvar 2 = path 0 3 1\nvar 3 = counter 2 1\n");
    }
}
