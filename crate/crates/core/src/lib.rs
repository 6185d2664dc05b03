//! Exact minimum k-domination and total k-domination on proper interval
//! graphs.
//!
//! An instance is a [`ProperIntervalModel`]. Three engines answer the same
//! question and are expected to agree on the optimal cost:
//!
//! * [`solve_fast`]: dynamic programming over the derived digraph that never
//!   builds its jump arcs, grouping candidate tails by their k-suffix;
//! * [`solve_naive`]: builds the whole derived digraph and runs a DAG
//!   shortest path;
//! * [`brute_force_min`]: exhaustive subset search, for small `n`.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod fast;
pub mod model;
pub mod oracle;
pub mod problem;
pub mod rational;
pub mod reduction;

pub use error::{Error, Result};
pub use fast::{representative_independence_check, solve_fast, solve_fast_with, FastRun, FastStats};
pub use model::{generate_random, DerivedGraph, Interval, ProperIntervalModel};
pub use oracle::{
    brute_force_min, brute_force_min_capped, check_lemma_components, is_k_dominating, is_total_k_dominating,
    Solution, VertexSet,
};
pub use problem::{Engine, Problem, Variant};
pub use rational::Rational;
pub use reduction::{build_digraph, solve_naive, solve_naive_with, E1Length, EngineOptions, Fault};

/// Runs the chosen engine with default options.
pub fn solve(model: &ProperIntervalModel, problem: &Problem, engine: Engine) -> Result<Solution> {
    match engine {
        Engine::Fast => solve_fast(model, problem),
        Engine::Naive => solve_naive(model, problem),
        Engine::Brute => brute_force_min(model, problem),
    }
}
