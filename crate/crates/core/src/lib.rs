//! Exact solvers for the directed anchored k-core problem: given a
//! digraph and integers `b`, `k`, `p`, can at most `b` anchors hold an
//! induced subgraph of at least `p` vertices in which every non-anchor
//! has in-degree at least `k`?

pub mod bounded;
pub mod dag;
pub mod degree;
pub mod engine;
pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod k1;
pub mod reductions;
pub mod separators;
pub mod set;

pub use bounded::{bounded_core_search, SearchConfig, SearchMode, SearchOutcome};
pub use dag::solve_dag;
pub use degree::{solve_by_degree, solve_half_k, solve_high_k, Run, SolverKind};
pub use engine::{
    check_solution, normalize, oracle_solve, peel, verify_solution, Instance, Normalized, Params, Solution, Verdict,
    Violation,
};
pub use error::{Error, Result};
pub use graph::DirectedGraph;
pub use k1::solve_k1;
pub use separators::{enumerate_important_separators, SeparatorSet};
pub use set::VertexSet;
