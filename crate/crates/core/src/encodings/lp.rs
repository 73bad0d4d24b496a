//! Binary integer programs for the visibility problems and the LP-format
//! writer used to hand them to external solvers.
//!
//! Membership is direct here: `x_v = 1` when `v` is in the set. Each pair
//! gets one selector `z_{u,v,P}` per shortest path; a selected path forbids
//! membership of its internal vertices, and the pair constraints force a
//! selected path whenever the variant requires the pair to see each other.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{enumerate_shortest_paths, DistanceMatrix, Graph};
use crate::visibility::Variant;

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
}

/// Identifier of a registered variable.
pub type VarId = usize;

#[derive(Debug, Clone)]
pub struct LpConstraint {
    pub name: String,
    pub terms: Vec<(i64, VarId)>,
    pub relation: Relation,
    pub rhs: i64,
}

/// A maximization program over binary variables.
#[derive(Debug, Clone, Default)]
pub struct LpModel {
    names: Vec<String>,
    objective: Vec<(i64, VarId)>,
    constraints: Vec<LpConstraint>,
}

impl LpModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a binary variable and returns its id.
    pub fn add_binary_var(&mut self, name: String) -> VarId {
        self.names.push(name);
        self.names.len() - 1
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, id: VarId) -> &str {
        &self.names[id]
    }

    pub fn set_objective(&mut self, terms: Vec<(i64, VarId)>) -> Result<()> {
        self.check_terms(&terms)?;
        self.objective = terms;
        Ok(())
    }

    pub fn add_constraint(
        &mut self,
        name: String,
        terms: Vec<(i64, VarId)>,
        relation: Relation,
        rhs: i64,
    ) -> Result<()> {
        self.check_terms(&terms)?;
        self.constraints.push(LpConstraint { name, terms, relation, rhs });
        Ok(())
    }

    pub fn constraints(&self) -> &[LpConstraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(i64, VarId)] {
        &self.objective
    }

    fn check_terms(&self, terms: &[(i64, VarId)]) -> Result<()> {
        for &(_, id) in terms {
            if id >= self.names.len() {
                return Err(Error::InvalidArgument(format!("unregistered variable id {id}")));
            }
        }
        Ok(())
    }
}

fn push_term(line: &mut String, first: bool, coef: i64, name: &str) {
    if coef >= 0 {
        line.push_str(if first { " " } else { " + " });
        if coef != 1 {
            line.push_str(&coef.to_string());
            line.push(' ');
        }
    } else {
        line.push_str(" - ");
        if coef != -1 {
            line.push_str(&(-coef).to_string());
            line.push(' ');
        }
    }
    line.push_str(name);
}

const TERMS_PER_LINE: usize = 12;

fn write_expr<W: Write>(
    sink: &mut W,
    head: &str,
    terms: &[(i64, VarId)],
    model: &LpModel,
    tail: Option<(&str, i64)>,
) -> Result<()> {
    let mut line = String::from(head);
    for (i, &(coef, id)) in terms.iter().enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            writeln!(sink, "{line}")?;
            line = String::from("    ");
        }
        push_term(&mut line, i == 0, coef, model.var_name(id));
    }
    match tail {
        Some((rel, rhs)) => writeln!(sink, "{line} {rel} {rhs}")?,
        None => writeln!(sink, "{line}")?,
    }
    Ok(())
}

/// Writes the model in the textual LP format (Maximize / Subject To /
/// Binary / End). Long expressions wrap at a fixed term count, so output is
/// byte-stable.
pub fn write_lp<W: Write>(model: &LpModel, mut sink: W) -> Result<()> {
    writeln!(sink, "Maximize")?;
    write_expr(&mut sink, " obj:", model.objective(), model, None)?;
    writeln!(sink, "Subject To")?;
    for c in model.constraints() {
        let rel = match c.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        };
        let head = format!(" {}:", c.name);
        write_expr(&mut sink, &head, &c.terms, model, Some((rel, c.rhs)))?;
    }
    writeln!(sink, "Binary")?;
    for id in 0..model.var_count() {
        writeln!(sink, " {}", model.var_name(id))?;
    }
    writeln!(sink, "End")?;
    Ok(())
}

/// Builds the binary program maximizing the set size subject to the
/// variant's visibility constraints. Variables are named `x_<v>` and
/// `z_<u>_<v>_<pathIndex>`.
pub fn encode_visibility_ilp(
    g: &Graph,
    dist: &DistanceMatrix,
    variant: Variant,
    path_cap: usize,
) -> Result<LpModel> {
    let n = g.vertex_count();
    let mut model = LpModel::new();
    let x: Vec<VarId> = (0..n).map(|v| model.add_binary_var(format!("x_{v}"))).collect();
    model.set_objective(x.iter().map(|&id| (1, id)).collect())?;
    let mut cidx = 0usize;
    let next_name = |cidx: &mut usize| {
        let name = format!("c{cidx}");
        *cidx += 1;
        name
    };

    if variant == Variant::GeneralPosition {
        // one packing constraint per collinear triple
        for u in 0..n {
            for v in (u + 1)..n {
                for w in 0..n {
                    if dist.strictly_between(u, v, w) {
                        model.add_constraint(
                            next_name(&mut cidx),
                            vec![(1, x[u]), (1, x[v]), (1, x[w])],
                            Relation::Le,
                            2,
                        )?;
                    }
                }
            }
        }
        return Ok(model);
    }

    for u in 0..n {
        for v in (u + 1)..n {
            let paths = enumerate_shortest_paths(g, dist, u, v, path_cap)?;
            let z: Vec<VarId> = (0..paths.len())
                .map(|index| model.add_binary_var(format!("z_{u}_{v}_{index}")))
                .collect();
            // a selected path excludes its internal vertices from the set
            for (path, &zid) in paths.iter().zip(&z) {
                for &w in &path[1..path.len() - 1] {
                    model.add_constraint(
                        next_name(&mut cidx),
                        vec![(1, zid), (1, x[w])],
                        Relation::Le,
                        1,
                    )?;
                }
            }
            let zsum = || z.iter().map(|&id| (-1i64, id));
            match variant {
                Variant::Mutual => {
                    let mut terms = vec![(1, x[u]), (1, x[v])];
                    terms.extend(zsum());
                    model.add_constraint(next_name(&mut cidx), terms, Relation::Le, 1)?;
                }
                Variant::Total => {
                    model.add_constraint(
                        next_name(&mut cidx),
                        z.iter().map(|&id| (1i64, id)).collect(),
                        Relation::Ge,
                        1,
                    )?;
                }
                Variant::Outer => {
                    let mut both = vec![(1, x[u]), (1, x[v])];
                    both.extend(zsum());
                    model.add_constraint(next_name(&mut cidx), both, Relation::Le, 1)?;
                    let mut left = vec![(1, x[u]), (-1, x[v])];
                    left.extend(zsum());
                    model.add_constraint(next_name(&mut cidx), left, Relation::Le, 0)?;
                    let mut right = vec![(-1, x[u]), (1, x[v])];
                    right.extend(zsum());
                    model.add_constraint(next_name(&mut cidx), right, Relation::Le, 0)?;
                }
                Variant::Dual => {
                    let mut both = vec![(1, x[u]), (1, x[v])];
                    both.extend(zsum());
                    model.add_constraint(next_name(&mut cidx), both, Relation::Le, 1)?;
                    let mut neither = vec![(1, x[u]), (1, x[v])];
                    neither.extend(z.iter().map(|&id| (1i64, id)));
                    model.add_constraint(next_name(&mut cidx), neither, Relation::Ge, 1)?;
                }
                Variant::GeneralPosition => unreachable!(),
            }
        }
    }
    Ok(model)
}
