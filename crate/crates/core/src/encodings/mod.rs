//! SAT and ILP encodings of the visibility problems, plus the embedded
//! solver and the file emitters used to hand models to external tools.
//!
//! The SAT side follows the inverted membership convention: the atom `x_v`
//! is false exactly when `v` belongs to the set. A sequential-counter
//! cardinality layer bounds the number of true atoms by `n - l`, which forces
//! at least `l` vertices into the set, and one feasibility test per target
//! size `l` turns the decision encoding into an optimizer.
//!
//! The ILP side uses the direct convention (`x_v = 1` for membership) with
//! one path-selector variable per (pair, shortest path).

mod cardinality;
mod cnf;
mod lp;
mod sat;
mod solver;

pub use cardinality::add_at_most_k_true;
pub use cnf::{read_dimacs, write_dimacs, write_var_map, CnfFormula, VarMeaning};
pub use lp::{encode_visibility_ilp, write_lp, LpModel, Relation};
pub use sat::{
    decode_model, encode_gp_sat, encode_visibility_sat, max_via_sat, DEFAULT_ENCODING_PATH_CAP,
};
pub use solver::{solve_cnf, solve_cnf_with_stats, SolveStats, SolverVerdict};
