//! Sequential-counter cardinality encoding (Sinz's LT-SEQ).
//!
//! Bounds the number of true literals among `lits` by `k` using `(m-1) * k`
//! auxiliary register variables `s_{i,j}` ("at least j of the first i
//! literals are true"). Arc-consistent under unit propagation.

use crate::error::Result;

use super::cnf::{CnfFormula, VarMeaning};

/// Appends clauses enforcing "at most `k` of `lits` are true".
///
/// `k = 0` emits one unit clause per literal; `k >= lits.len()` emits
/// nothing.
pub fn add_at_most_k_true(cnf: &mut CnfFormula, lits: &[i32], k: usize) -> Result<()> {
    let m = lits.len();
    if k >= m {
        return Ok(());
    }
    if k == 0 {
        for &l in lits {
            cnf.add_clause(vec![-l])?;
        }
        return Ok(());
    }
    // registers s[i][j] for i in 1..=m-1, j in 1..=k
    let mut regs = vec![vec![0i32; k + 1]; m];
    for (i, row) in regs.iter_mut().enumerate().skip(1) {
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = cnf.fresh_var(VarMeaning::Counter { i, j });
        }
    }
    let s = |i: usize, j: usize| regs[i][j];

    cnf.add_clause(vec![-lits[0], s(1, 1)])?;
    for j in 2..=k {
        cnf.add_clause(vec![-s(1, j)])?;
    }
    for i in 2..m {
        cnf.add_clause(vec![-lits[i - 1], s(i, 1)])?;
        cnf.add_clause(vec![-s(i - 1, 1), s(i, 1)])?;
        for j in 2..=k {
            cnf.add_clause(vec![-lits[i - 1], -s(i - 1, j - 1), s(i, j)])?;
            cnf.add_clause(vec![-s(i - 1, j), s(i, j)])?;
        }
        cnf.add_clause(vec![-lits[i - 1], -s(i - 1, k)])?;
    }
    cnf.add_clause(vec![-lits[m - 1], -s(m - 1, k)])?;
    Ok(())
}
