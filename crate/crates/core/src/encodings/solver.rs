//! Embedded complete SAT solver: DPLL with unit propagation and two-literal
//! watching, chronological backtracking, no clause learning.
//!
//! Decisions are deterministic — lowest-index unassigned variable, false
//! branch first — so runs are reproducible. A SAT verdict re-verifies its
//! model clause by clause before returning.

use super::cnf::CnfFormula;

/// Outcome of a satisfiability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverVerdict {
    /// Satisfiable; the assignment is indexed by variable (entry 0 unused).
    Sat(Vec<bool>),
    Unsat,
}

/// Search counters of one solver run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
}

const UNASSIGNED: i8 = -1;
const FALSE: i8 = 0;
const TRUE: i8 = 1;

struct Solver {
    var_count: usize,
    clauses: Vec<Vec<i32>>,
    /// watches[code] lists clauses currently watching that literal.
    watches: Vec<Vec<usize>>,
    values: Vec<i8>,
    /// (variable, is_decision, flipped)
    trail: Vec<(usize, bool, bool)>,
    qhead: usize,
    next_var: usize,
    stats: SolveStats,
}

#[inline]
fn code(lit: i32) -> usize {
    let var = lit.unsigned_abs() as usize;
    2 * (var - 1) + usize::from(lit < 0)
}

#[inline]
fn lit_value_in(values: &[i8], lit: i32) -> i8 {
    let v = values[lit.unsigned_abs() as usize];
    if v == UNASSIGNED {
        UNASSIGNED
    } else if lit > 0 {
        v
    } else {
        1 - v
    }
}

impl Solver {
    fn new(cnf: &CnfFormula) -> (Self, Vec<i32>) {
        let mut solver = Solver {
            var_count: cnf.var_count(),
            clauses: Vec::with_capacity(cnf.clause_count()),
            watches: vec![Vec::new(); 2 * cnf.var_count()],
            values: vec![UNASSIGNED; cnf.var_count() + 1],
            trail: Vec::with_capacity(cnf.var_count()),
            qhead: 0,
            next_var: 1,
            stats: SolveStats::default(),
        };
        let mut units = Vec::new();
        for clause in cnf.clauses() {
            if clause.len() == 1 {
                units.push(clause[0]);
            } else {
                let ci = solver.clauses.len();
                solver.watches[code(clause[0])].push(ci);
                solver.watches[code(clause[1])].push(ci);
                solver.clauses.push(clause.clone());
            }
        }
        (solver, units)
    }

    #[inline]
    fn lit_value(&self, lit: i32) -> i8 {
        lit_value_in(&self.values, lit)
    }

    /// Assigns a literal; returns false on an immediate contradiction.
    fn enqueue(&mut self, lit: i32, decision: bool, flipped: bool) -> bool {
        match self.lit_value(lit) {
            TRUE => true,
            FALSE => false,
            _ => {
                let var = lit.unsigned_abs() as usize;
                self.values[var] = if lit > 0 { TRUE } else { FALSE };
                self.trail.push((var, decision, flipped));
                true
            }
        }
    }

    /// Unit propagation; returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let (var, _, _) = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            // the literal that just became false
            let falsified = if self.values[var] == TRUE { -(var as i32) } else { var as i32 };
            let watch_code = code(falsified);
            let watchers = std::mem::take(&mut self.watches[watch_code]);
            let mut kept = Vec::with_capacity(watchers.len());
            let mut conflict = false;
            for (pos, &ci) in watchers.iter().enumerate() {
                if conflict {
                    kept.extend_from_slice(&watchers[pos..]);
                    break;
                }
                enum Action {
                    Keep,
                    Moved(usize),
                    Unit(i32),
                    Conflict,
                }
                let action = {
                    let values = &self.values;
                    let clause = &mut self.clauses[ci];
                    if clause[0] == falsified {
                        clause.swap(0, 1);
                    }
                    debug_assert_eq!(clause[1], falsified);
                    let first = clause[0];
                    if lit_value_in(values, first) == TRUE {
                        Action::Keep
                    } else {
                        match (2..clause.len())
                            .find(|&k| lit_value_in(values, clause[k]) != FALSE)
                        {
                            Some(k) => {
                                clause.swap(1, k);
                                Action::Moved(code(clause[1]))
                            }
                            None => {
                                if lit_value_in(values, first) == UNASSIGNED {
                                    Action::Unit(first)
                                } else {
                                    Action::Conflict
                                }
                            }
                        }
                    }
                };
                match action {
                    Action::Keep => kept.push(ci),
                    Action::Moved(new_code) => self.watches[new_code].push(ci),
                    Action::Unit(lit) => {
                        kept.push(ci);
                        let ok = self.enqueue(lit, false, false);
                        debug_assert!(ok);
                    }
                    Action::Conflict => {
                        kept.push(ci);
                        conflict = true;
                    }
                }
            }
            self.watches[watch_code] = kept;
            if conflict {
                return false;
            }
        }
        true
    }

    /// Chronological backtracking: undo to the deepest unflipped decision
    /// and try its other branch. Returns false when no decision remains.
    fn backtrack(&mut self) -> bool {
        while let Some((var, decision, flipped)) = self.trail.pop() {
            let value = self.values[var];
            self.values[var] = UNASSIGNED;
            if var < self.next_var {
                self.next_var = var;
            }
            if decision && !flipped {
                let lit = if value == TRUE { -(var as i32) } else { var as i32 };
                self.qhead = self.trail.len();
                let ok = self.enqueue(lit, true, true);
                debug_assert!(ok);
                return true;
            }
        }
        false
    }

    fn next_unassigned(&mut self) -> Option<usize> {
        while self.next_var <= self.var_count {
            if self.values[self.next_var] == UNASSIGNED {
                return Some(self.next_var);
            }
            self.next_var += 1;
        }
        None
    }

    fn run(&mut self) -> bool {
        loop {
            if !self.propagate() {
                if !self.backtrack() {
                    return false;
                }
                continue;
            }
            match self.next_unassigned() {
                None => return true,
                Some(var) => {
                    self.stats.decisions += 1;
                    // false-first: membership atoms are false inside the set
                    let ok = self.enqueue(-(var as i32), true, false);
                    debug_assert!(ok);
                }
            }
        }
    }
}

/// Complete satisfiability test; see the module docs for the search order.
pub fn solve_cnf(cnf: &CnfFormula) -> SolverVerdict {
    solve_cnf_with_stats(cnf).0
}

/// As [`solve_cnf`], also returning search counters.
pub fn solve_cnf_with_stats(cnf: &CnfFormula) -> (SolverVerdict, SolveStats) {
    let (mut solver, units) = Solver::new(cnf);
    for lit in units {
        if !solver.enqueue(lit, false, false) {
            return (SolverVerdict::Unsat, solver.stats);
        }
    }
    if solver.run() {
        let model: Vec<bool> =
            (0..=solver.var_count).map(|v| v > 0 && solver.values[v] == TRUE).collect();
        assert!(cnf.satisfied_by(&model), "solver returned a model violating a clause");
        (SolverVerdict::Sat(model), solver.stats)
    } else {
        (SolverVerdict::Unsat, solver.stats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::cnf::VarMeaning;

    fn var(cnf: &mut CnfFormula, v: usize) -> i32 {
        cnf.fresh_var(VarMeaning::Vertex(v))
    }

    #[test]
    fn single_unit_clause() {
        let mut cnf = CnfFormula::new();
        let x = var(&mut cnf, 0);
        cnf.add_clause(vec![x]).unwrap();
        match solve_cnf(&cnf) {
            SolverVerdict::Sat(model) => assert!(model[1]),
            SolverVerdict::Unsat => panic!("unit clause is satisfiable"),
        }
    }

    #[test]
    fn contradictory_units_are_unsat() {
        let mut cnf = CnfFormula::new();
        let x = var(&mut cnf, 0);
        cnf.add_clause(vec![x]).unwrap();
        cnf.add_clause(vec![-x]).unwrap();
        assert_eq!(solve_cnf(&cnf), SolverVerdict::Unsat);
    }

    #[test]
    fn empty_formula_is_sat() {
        let cnf = CnfFormula::new();
        assert!(matches!(solve_cnf(&cnf), SolverVerdict::Sat(_)));
    }

    #[test]
    fn false_first_decisions_produce_the_all_false_model() {
        let mut cnf = CnfFormula::new();
        let a = var(&mut cnf, 0);
        let b = var(&mut cnf, 1);
        cnf.add_clause(vec![-a, -b]).unwrap();
        match solve_cnf(&cnf) {
            SolverVerdict::Sat(model) => assert_eq!(&model[1..], &[false, false]),
            SolverVerdict::Unsat => panic!(),
        }
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p_{i,j}: pigeon i in hole j; i in 0..3, j in 0..2
        let mut cnf = CnfFormula::new();
        let mut p = [[0i32; 2]; 3];
        for (i, row) in p.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = var(&mut cnf, 2 * i + j);
            }
        }
        for row in &p {
            cnf.add_clause(vec![row[0], row[1]]).unwrap();
        }
        for j in 0..2 {
            for i1 in 0..3 {
                for i2 in (i1 + 1)..3 {
                    cnf.add_clause(vec![-p[i1][j], -p[i2][j]]).unwrap();
                }
            }
        }
        assert_eq!(solve_cnf(&cnf), SolverVerdict::Unsat);
    }

    #[test]
    fn random_formulas_agree_with_truth_tables() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6usize);
            let mut cnf = CnfFormula::new();
            let vars: Vec<i32> = (0..n).map(|v| var(&mut cnf, v)).collect();
            let clause_count = rng.gen_range(1..=12usize);
            for _ in 0..clause_count {
                let width = rng.gen_range(1..=3usize.min(n));
                let mut chosen: Vec<usize> = (0..n).collect();
                chosen.shuffle(&mut rng);
                chosen.truncate(width);
                let lits: Vec<i32> = chosen
                    .iter()
                    .map(|&v| if rng.gen_bool(0.5) { vars[v] } else { -vars[v] })
                    .collect();
                cnf.add_clause(lits).unwrap();
            }
            let brute_sat = (0u32..(1 << n)).any(|mask| {
                let mut values = vec![false; n + 1];
                for v in 0..n {
                    values[v + 1] = mask >> v & 1 == 1;
                }
                cnf.satisfied_by(&values)
            });
            match solve_cnf(&cnf) {
                SolverVerdict::Sat(model) => {
                    assert!(brute_sat);
                    assert!(cnf.satisfied_by(&model));
                }
                SolverVerdict::Unsat => assert!(!brute_sat),
            }
        }
    }
}
