//! Exact combinatorial toolkit for computing and certifying mutual-visibility
//! and general position numbers on Sierpinski triangle graphs.
//!
//! The crate provides, end to end:
//!
//! * generators for base-3 Sierpinski graphs `S^n` and Sierpinski triangle
//!   graphs `ST_3^n` ([`sierpinski`]);
//! * metric primitives — BFS distances, intervals, shortest-path DAGs and
//!   bounded shortest-path enumeration ([`graph`]);
//! * decision procedures for the five set variants: mutual, total, outer and
//!   dual visibility plus general position ([`visibility`]);
//! * closed-form optimal-set constructions that validate themselves before
//!   returning ([`constructions`]);
//! * exact maximum-set search by exhaustive enumeration, branch and bound,
//!   and an embedded SAT solver with a cardinality sweep ([`search`],
//!   [`encodings`]);
//! * emitters for DIMACS CNF and LP files so external solvers can reproduce
//!   every result ([`encodings`]).
//!
//! The companion `book/` directory walks through the concepts chapter by
//! chapter; its code snippets are compiled and run as doc-tests of this
//! crate.

pub mod constructions;
pub mod encodings;
pub mod error;
pub mod graph;
pub mod io;
pub mod search;
pub mod sierpinski;
pub mod visibility;

pub use error::{Error, Result};
pub use graph::{
    all_pairs_distances, bfs_distances, enumerate_shortest_paths, interval, shortest_path_dag,
    DistanceMatrix, Graph, ShortestPathDag,
};
pub use sierpinski::{
    build_sierpinski, build_sierpinski_triangle, SierpinskiTriangle, SubtriangleAddress,
    TernaryWord,
};
pub use visibility::{validate_set, Variant, VertexSet, Violation};

#[cfg(doctest)]
mod book_doctests;
